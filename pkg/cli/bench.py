from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from config.experiment_schema import ExperimentManifest, InstanceSpec
from diagnostics import CSV_HEADER, RuleOptions, report, rows_to_csv
from election_core import SymmetricProfile
from instance_gen import generate_instance, load_instance
from utils.file_utils import write_json_atomic, write_text_atomic
from utils.logger import setup_logger

logger = setup_logger(__name__)

BENCH_HEADER = ("family", *CSV_HEADER)


def _instance_family(spec: InstanceSpec) -> str:
    return spec.generator if spec.generator is not None else Path(spec.path).suffix.lstrip(".") or "file"


def _run_entry(manifest_data: dict[str, Any], index: int, cap: int | None, solver: str) -> tuple[list, list]:
    """
    在一个进程中跑清单的第 index 个实例上的全部 (k, s) 组合

    Returns:
        (CSV 行, 报告字典列表)
    """
    manifest = ExperimentManifest.model_validate(manifest_data)
    spec = manifest.instances[index]
    seed = spec.seed if spec.seed is not None else manifest.seed
    if spec.path is not None:
        profile, _ = load_instance(Path(spec.path))
    else:
        profile = generate_instance(spec.generator, spec.params, seed)

    if isinstance(profile, SymmetricProfile):
        metadata_k = profile.metadata.get("k")
    else:
        metadata_k = spec.params.get("k")
    options = RuleOptions(
        seed=manifest.seed,
        exact=manifest.exact,
        cap=cap,
        solver=solver,
        trials=manifest.trials,
        lp_seeds=manifest.lp_seeds,
    )

    family = _instance_family(spec)
    rows, reports = [], []
    for k, s in manifest.pairs(spec, metadata_k):
        rules = [r for r in manifest.rules if not (r == "lp-round" and s == 1)]
        if len(rules) < len(manifest.rules):
            logger.warning(f"实例 {spec.id}: s=1 时跳过 lp-round")
        if not rules:
            continue
        run = report(profile, rules, k, s, options, instance_id=spec.id, with_opt=manifest.with_opt)
        rows.extend([family, *row] for row in run.csv_rows())
        reports.append(run.to_dict())
    return rows, reports


class BenchRunner:
    """按清单逐个实例运行规则；workers > 1 时用进程池，输出顺序与清单一致"""

    def __init__(
        self, manifest: ExperimentManifest, workers: int | None = None, cap: int | None = None, solver: str = "auto"
    ):
        self.manifest = manifest
        self.workers = workers if workers is not None else manifest.workers
        self.cap = cap
        self.solver = solver

    def run(self) -> tuple[list[list[Any]], list[dict[str, Any]]]:
        data = self.manifest.model_dump(by_alias=True)
        indices = range(len(self.manifest.instances))
        logger.info(f"开始 bench {self.manifest.name}：{len(indices)} 个实例，{self.workers} 个进程")
        if self.workers > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                futures = [pool.submit(_run_entry, data, i, self.cap, self.solver) for i in indices]
                results = [f.result() for f in futures]
        else:
            results = [_run_entry(data, i, self.cap, self.solver) for i in indices]

        rows = [row for entry_rows, _ in results for row in entry_rows]
        reports = [r for _, entry_reports in results for r in entry_reports]
        logger.info(f"bench 完成：共 {len(rows)} 行")
        return rows, reports

    def write(self, rows: list[list[Any]], reports: list[dict[str, Any]], csv_path: Path | None = None) -> list[Path]:
        """写出 CSV 与 JSON（原子写入）；csv_path 覆盖清单里的 CSV 路径"""
        written = []
        target = csv_path or (Path(self.manifest.output.csv) if self.manifest.output.csv else None)
        if target is not None:
            written.append(write_text_atomic(target, rows_to_csv(rows, BENCH_HEADER)))
        if self.manifest.output.json_path:
            payload = {"name": self.manifest.name, "reports": reports}
            written.append(write_json_atomic(Path(self.manifest.output.json_path), payload))
        for path in written:
            logger.info(f"结果已写入: {path}")
        return written
