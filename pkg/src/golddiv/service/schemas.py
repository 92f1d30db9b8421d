"""Request/response models for the HTTP service.

Field names follow the library's report types; FixedValue and Rational
travel as exact structures (magnitude/int_bits/frac_bits, numerator/
denominator) so nothing is lost over the wire. Every response also
carries the canonical text rendering so thin clients can just print.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..fixedpoint import FixedValue, from_bits


class FixedValueModel(BaseModel):
    magnitude: int
    int_bits: int
    frac_bits: int
    binary: str
    decimal: str

    @classmethod
    def from_fixed(cls, v: FixedValue) -> "FixedValueModel":
        return cls(
            magnitude=v.magnitude,
            int_bits=v.int_bits,
            frac_bits=v.frac_bits,
            binary=v.binary_str(),
            decimal=v.decimal_str(),
        )

    def to_fixed(self) -> FixedValue:
        return from_bits(self.magnitude, self.int_bits, self.frac_bits)


class RationalModel(BaseModel):
    numerator: int
    denominator: int

    @classmethod
    def from_fraction(cls, f: Fraction) -> "RationalModel":
        return cls(numerator=f.numerator, denominator=f.denominator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


class TableRequest(BaseModel):
    p: int = 4
    verify: bool = True


class TableResponse(BaseModel):
    p: int
    entries: list[FixedValueModel]
    max_seed_error: Optional[RationalModel] = None
    text: str
    warning: Optional[str] = None


class ProblemModel(BaseModel):
    n: FixedValueModel
    d: FixedValueModel


class DivideRequest(BaseModel):
    n: str = Field(description="numerator in [1,2): decimal '1.25' or binary '1.01b'")
    d: str
    p: int = 4
    iterations: int = 3
    mult_frac_bits: Optional[int] = None  # None keeps every product bit
    complement_mode: Literal["exact", "ones"] = "exact"
    seed: Optional[str] = None  # overrides the table lookup


class DivideResponse(BaseModel):
    problem: ProblemModel
    k: list[FixedValueModel]
    q: list[FixedValueModel]
    r: list[FixedValueModel]
    exact_quotient: RationalModel
    relative_error: list[RationalModel]
    text: str


class SweepRequest(BaseModel):
    p: int = 4
    iterations: int = 3
    mult_frac_bits: Optional[int] = None
    complement_mode: Literal["exact", "ones"] = "exact"
    density: Optional[int] = None  # samples per axis when p > 8
    target: Optional[str] = None  # rel-error target as a Fraction string


class SweepResponse(BaseModel):
    config: dict
    total_pairs: int
    worst_rel_error: RationalModel
    mean_rel_error: RationalModel
    pairs_exceeding_target: int
    max_one_minus_r: RationalModel
    csv: str
    text: str


class TimingModel(BaseModel):
    mult_latency: int = 4
    mult_initiation_interval: int = 1
    rom_latency: int = 1
    complement_latency: int = 0
    logic_block_latency: int = 1


class SimulateRequest(BaseModel):
    topology: Literal["original", "feedback"]
    iterations: int = 3
    timing: TimingModel = TimingModel()


class ScheduleModel(BaseModel):
    topology: str
    iterations: int
    node_issue: dict[str, int]
    node_complete: dict[str, int]
    node_unit: dict[str, str]
    unit_occupancy: dict[str, list[tuple[int, int, str]]]
    total_cycles: int


class SimulateResponse(BaseModel):
    schedule: ScheduleModel
    text: str


class AreaModel(BaseModel):
    topology: str
    units: dict[str, int]
    weighted_area: int


class CompareRequest(BaseModel):
    iterations: int = 3
    timing: TimingModel = TimingModel()


class CompareResponse(BaseModel):
    iterations: int
    timing: TimingModel
    original_schedule: ScheduleModel
    feedback_schedule: ScheduleModel
    original_area: AreaModel
    feedback_area: AreaModel
    cycle_delta: int
    area_savings: dict[str, int]
    one_cycle_tradeoff: bool
    claims_applicable: bool
    claims_pass: bool
    note: str
    text: str
