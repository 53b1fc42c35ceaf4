import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from pydantic import ValidationError

from config.experiment_schema import ExperimentManifest, load_manifest
from config.settings import RuntimeSettings
from election_core import ManifestValidationError

EXAMPLE_MANIFEST = Path(__file__).resolve().parent.parent / "config" / "example_manifest.json"


def _manifest(**overrides) -> dict:
    data = {
        "schema": 1,
        "instances": [{"id": "r", "generator": "random", "params": {"m": 6, "n": 4}}],
        "rules": ["greedy"],
        "k": [2],
    }
    data.update(overrides)
    return data


class TestManifest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, data: dict, name: str = "manifest.json") -> Path:
        path = self.dir / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    def test_example_manifest(self):
        manifest = load_manifest(EXAMPLE_MANIFEST)
        self.assertEqual(manifest.name, "sborda-separation")
        self.assertEqual(len(manifest.instances), 3)
        self.assertEqual(manifest.output.json_path, "output/sborda_separation.json")
        random_spec = manifest.instances[2]
        self.assertEqual(manifest.pairs(random_spec, None), [(1, 1), (3, 1), (3, 2), (5, 1), (5, 2)])

    def test_defaults(self):
        manifest = load_manifest(self._write(_manifest()))
        self.assertEqual(manifest.s, [1])
        self.assertEqual(manifest.workers, 1)
        self.assertFalse(manifest.with_opt)

    def test_rejects_k_above_m(self):
        with self.assertRaises(ManifestValidationError):
            load_manifest(self._write(_manifest(k=[7])))

    def test_rejects_unknown_schema(self):
        with self.assertRaises(ManifestValidationError):
            load_manifest(self._write(_manifest(schema=2)))

    def test_rejects_unknown_rule(self):
        with self.assertRaises(ManifestValidationError):
            load_manifest(self._write(_manifest(rules=["greedy", "stv"])))

    def test_rejects_generator_and_path(self):
        spec = {"id": "x", "generator": "random", "path": "x.txt", "params": {"m": 4, "n": 2}}
        with self.assertRaises(ManifestValidationError):
            load_manifest(self._write(_manifest(instances=[spec])))

    def test_rejects_unknown_field(self):
        with self.assertRaises(ManifestValidationError):
            load_manifest(self._write(_manifest(colour="blue")))

    def test_unparseable_file(self):
        path = self.dir / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with self.assertRaises(ManifestValidationError):
            load_manifest(path)

    def test_pairs_skip_s_above_k(self):
        manifest = ExperimentManifest.model_validate(_manifest(k=[1, 3], s=[1, 2]))
        self.assertEqual(manifest.pairs(manifest.instances[0], None), [(1, 1), (3, 1), (3, 2)])

    def test_auto_k_needs_metadata(self):
        manifest = ExperimentManifest.model_validate(_manifest(k=["auto"]))
        self.assertEqual(manifest.pairs(manifest.instances[0], 4), [(4, 1)])
        with self.assertRaises(ManifestValidationError):
            manifest.pairs(manifest.instances[0], None)

    def test_yaml_manifest_resolves_paths(self):
        (self.dir / "toy.txt").write_text("3 1\n0 1 2\n", encoding="utf-8")
        path = self.dir / "manifest.yaml"
        path.write_text(
            "schema: 1\n"
            "instances:\n"
            "  - id: toy\n"
            "    path: toy.txt\n"
            "rules: [greedy, opt]\n"
            "k: [1]\n",
            encoding="utf-8",
        )
        manifest = load_manifest(path)
        self.assertEqual(Path(manifest.instances[0].path), (self.dir / "toy.txt").resolve())
        self.assertEqual(manifest.rules, ["greedy", "opt"])


class TestRuntimeSettings(unittest.TestCase):
    def test_from_env(self):
        env = {"MWELECT_SEED": "7", "MWELECT_LOG_LEVEL": "debug", "MWELECT_LP_SOLVER": "highs", "MWELECT_WORKERS": ""}
        with patch.dict(os.environ, env):
            settings = RuntimeSettings.from_env()
        self.assertEqual(settings.seed, 7)
        self.assertEqual(settings.log_level, "DEBUG")
        self.assertEqual(settings.lp_solver, "highs")
        self.assertEqual(settings.workers, 1)
        self.assertNotIn("workers", settings.model_fields_set)

    def test_invalid_values(self):
        with patch.dict(os.environ, {"MWELECT_LP_SOLVER": "cplex"}):
            with self.assertRaises(ValidationError):
                RuntimeSettings.from_env()
        with self.assertRaises(ValidationError):
            RuntimeSettings(log_level="LOUD")


if __name__ == "__main__":
    unittest.main()
