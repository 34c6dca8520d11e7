"""Problem configuration loaded from JSON."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ProblemConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    order: Optional[Literal[2, 3]] = None
    # each coefficient as [re, im]; order 2 -> (a1, a0), order 3 -> (a2, a1, a0)
    coefficients: Optional[list[tuple[float, float]]] = None
    tol: float = Field(1e-12, gt=0)
    sep_min: float = Field(1e-6, gt=0)
    pole_eps: float = Field(1e-8, gt=0)
    trials: int = Field(200, ge=0)
    seed: Optional[int] = Field(0, ge=0)
    tolerances: dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _consistent(self):
        if self.coefficients is not None:
            if self.order is None:
                raise ValueError("'order' is required with 'coefficients'")
            if len(self.coefficients) != self.order:
                raise ValueError(f"order {self.order} needs {self.order} coefficients, got {len(self.coefficients)}")
        if self.trials > 0 and self.seed is None:
            raise ValueError("a seed is required when trials > 0")
        return self

    def complex_coefficients(self) -> list[complex]:
        return [complex(re, im) for re, im in self.coefficients or []]


def load_config(path) -> ProblemConfig:
    return ProblemConfig.model_validate(json.loads(Path(path).read_text()))
