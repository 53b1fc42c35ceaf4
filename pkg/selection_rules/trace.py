from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from utils.math_utils import format_fraction, parse_fraction


@dataclass(frozen=True)
class Pick:
    """一次选取：候选人、选取后的分数、相对上一步的改进量"""

    candidate: int
    score: Fraction
    marginal: Fraction
    # 对称画像上选中的可交换块名（关键候选人为 None）
    block: str | None = None


@dataclass
class SelectionTrace:
    """逐步构造 T_0 ⊂ T_1 ⊂ … ⊂ T_k 的记录"""

    rule: str
    k: int
    s: int
    picks: list[Pick] = field(default_factory=list)

    def record(self, candidate: int, score: Fraction, previous: Fraction, block: str | None = None) -> None:
        self.picks.append(Pick(candidate, score, previous - score, block))

    @property
    def candidates(self) -> list[int]:
        return [p.candidate for p in self.picks]

    @property
    def scores(self) -> list[Fraction]:
        return [p.score for p in self.picks]

    def prefix(self, j: int) -> list[int]:
        return self.candidates[:j]

    def is_non_increasing(self) -> bool:
        scores = self.scores
        return all(b <= a for a, b in zip(scores, scores[1:], strict=False))

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "k": self.k,
            "s": self.s,
            "picks": [
                {
                    "candidate": p.candidate,
                    "score": format_fraction(p.score),
                    "marginal": format_fraction(p.marginal),
                    **({"block": p.block} if p.block else {}),
                }
                for p in self.picks
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SelectionTrace":
        picks = [
            Pick(int(p["candidate"]), parse_fraction(p["score"]), parse_fraction(p["marginal"]), p.get("block"))
            for p in data.get("picks", [])
        ]
        return cls(rule=data["rule"], k=int(data["k"]), s=int(data["s"]), picks=picks)
