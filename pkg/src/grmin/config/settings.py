# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Pydantic settings models for grmin configuration."""

import os
import sys
from pathlib import Path
from typing import Any, Optional

import galois
import toml
from pydantic import BaseModel, Field, field_validator, model_validator

from .constants import (
    BUDGET_ENV_VAR,
    DEFAULT_CODEWORD_BUDGET,
    DEFAULT_CODEWORD_LENGTH_CAP,
    DEFAULT_DUAL_BUDGET,
    DEFAULT_ORTHOGONAL_BUDGET,
    DEFAULT_RING_TABLE_CAP,
    DEFAULT_SEARCH_BUDGET,
    DEFAULT_WITNESS_BUDGET,
    MAX_REPORTED_WITNESSES,
)

# Handle tomllib compatibility (Python 3.11+ has tomllib built-in)
if sys.version_info >= (3, 11):
    import tomllib

    HAS_TOMLLIB = True
else:
    HAS_TOMLLIB = False
    try:
        import tomli as tomllib

        HAS_TOMLLIB = True
    except ImportError:
        # tomli not available, the toml package is used for reading instead
        pass


class BudgetSettings(BaseModel):
    """Enumeration caps for every exhaustive path."""

    codeword_budget: int = Field(
        default=DEFAULT_CODEWORD_BUDGET,
        ge=1,
        description="Largest |C| accepted by the brute-force codeword oracle",
    )
    codeword_length_cap: int = Field(
        default=DEFAULT_CODEWORD_LENGTH_CAP,
        ge=1,
        description="Largest code length k accepted by the brute-force oracle",
    )
    dual_budget: int = Field(
        default=DEFAULT_DUAL_BUDGET,
        ge=1,
        description="Largest ambient size q^{nk} enumerated for duals",
    )
    orthogonal_budget: int = Field(
        default=DEFAULT_ORTHOGONAL_BUDGET,
        ge=1,
        description="Largest q^{nm} enumerated for brute-force orthogonal modules",
    )
    witness_budget: int = Field(
        default=DEFAULT_WITNESS_BUDGET,
        ge=1,
        description="Largest number of domain points examined by a witness search",
    )
    search_budget: int = Field(
        default=DEFAULT_SEARCH_BUDGET,
        ge=1,
        description="Largest number of candidate column sets in the k2 search",
    )
    ring_table_cap: int = Field(
        default=DEFAULT_RING_TABLE_CAP,
        ge=2,
        description="Largest ring size for which operation tables are built",
    )
    max_witnesses: int = Field(
        default=MAX_REPORTED_WITNESSES,
        ge=1,
        le=4096,
        description="Number of failing message vectors kept in a report",
    )

    @classmethod
    def from_env(
        cls, base: Optional["BudgetSettings"] = None, value: Optional[str] = None
    ) -> "BudgetSettings":
        """Apply the GRMIN_BUDGET override on top of ``base``.

        The variable is either one integer, applied to every enumeration cap,
        or comma-separated ``name=value`` pairs naming individual fields.

        Args:
            base: Settings to override (defaults when None)
            value: Explicit override string (read from the environment when None)

        Returns:
            New settings instance

        Raises:
            ValueError: If the override string cannot be parsed
        """
        settings = base or cls()
        raw = value if value is not None else os.environ.get(BUDGET_ENV_VAR)
        if raw is None or not raw.strip():
            return settings

        data = settings.model_dump()
        raw = raw.strip()
        if "=" not in raw:
            try:
                cap = int(raw)
            except ValueError as e:
                raise ValueError(f"{BUDGET_ENV_VAR} must be an integer: {raw}") from e
            for name in (
                "codeword_budget",
                "dual_budget",
                "orthogonal_budget",
                "witness_budget",
                "search_budget",
            ):
                data[name] = cap
            return cls(**data)

        for pair in raw.split(","):
            name, _, number = pair.partition("=")
            name = name.strip()
            if name not in data:
                raise ValueError(f"Unknown budget name in {BUDGET_ENV_VAR}: {name}")
            try:
                data[name] = int(number)
            except ValueError as e:
                raise ValueError(f"Budget {name} must be an integer: {number}") from e
        return cls(**data)

    def save_to_toml(self, file_path: Path) -> None:
        """Save budgets to a TOML file under a [budget] table."""
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as f:
            toml.dump({"budget": self.model_dump()}, f)

    @classmethod
    def load_from_toml(cls, file_path: Path) -> "BudgetSettings":
        """Load budgets from a TOML file.

        Raises:
            FileNotFoundError: If the file does not exist
        """
        if not file_path.exists():
            raise FileNotFoundError(f"Config file not found: {file_path}")

        if HAS_TOMLLIB:
            with open(file_path, "rb") as f:
                data = tomllib.load(f)
        else:
            with open(file_path, encoding="utf-8") as f:
                data = toml.load(f)

        return cls(**data.get("budget", {}))


def load_budgets(config_path: Optional[Path] = None) -> BudgetSettings:
    """Resolve budgets: defaults < TOML file < GRMIN_BUDGET."""
    base = BudgetSettings.load_from_toml(config_path) if config_path else None
    return BudgetSettings.from_env(base)


class RingSpec(BaseModel):
    """User-facing ring parameters before the context is built."""

    p: int = Field(ge=2, description="Residue characteristic (prime)")
    n: int = Field(default=1, ge=1, le=32, description="Nilpotency exponent")
    ell: int = Field(default=1, ge=1, le=16, description="Extension degree")
    h: Optional[list[int]] = Field(
        default=None,
        description="Defining polynomial, constant term first, monic of degree ell",
    )

    @field_validator("p")
    @classmethod
    def validate_prime(cls, v: int) -> int:
        """Reject composite characteristics."""
        if not galois.is_prime(v):
            raise ValueError(f"p must be prime, got {v}")
        return v

    @model_validator(mode="after")
    def validate_polynomial_shape(self) -> "RingSpec":
        """Check degree and monicity of h when one is given."""
        if self.h is not None:
            if len(self.h) != self.ell + 1:
                raise ValueError(
                    f"h must have ell+1={self.ell + 1} coefficients, got {len(self.h)}"
                )
            if self.h[-1] != 1:
                raise ValueError("h must be monic (leading coefficient 1)")
        return self

    @classmethod
    def parse_h(cls, text: Optional[str]) -> Optional[list[int]]:
        """Parse a comma-separated coefficient list such as ``1,1,1``."""
        if text is None or not text.strip():
            return None
        try:
            return [int(part) for part in text.split(",")]
        except ValueError as e:
            raise ValueError(f"Invalid polynomial coefficients: {text}") from e


class SweepSettings(BaseModel):
    """Options for criterion sweeps."""

    threads: int = Field(default=1, ge=1, le=256, description="Worker processes")
    cross_check: bool = Field(
        default=False,
        description="Also run the size criterion on root words and compare",
    )
    show_progress: bool = Field(default=False, description="Render progress bars")

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary view used in JSON reports."""
        return self.model_dump()
