from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, FrozenSet, List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    computed_field,
    field_validator,
    model_validator,
)


def format_fraction(value: Fraction) -> str:
    """Render an exact rational as "p/q", or "p" when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


ExactRational = Annotated[
    Fraction, PlainSerializer(format_fraction, return_type=str, when_used="always")
]


class HHKitError(Exception):
    """Base class for every error raised by hhkit"""


class ParameterDomainError(HHKitError):
    pass


class VertexIndexError(HHKitError):
    pass


class SelfLoopError(HHKitError):
    pass


class NotEquitableError(HHKitError):
    def __init__(self, message: str, witness: Tuple[int, int]):
        super().__init__(message)
        self.witness = witness


class NotAutomorphismError(HHKitError):
    pass


class NotIndependentError(HHKitError):
    pass


class ImproperColoringError(HHKitError):
    pass


class DegreeConditionError(HHKitError):
    pass


class GroupCapExceededError(HHKitError):
    pass


class TransitivityError(HHKitError):
    pass


class UnknownSuiteError(HHKitError):
    pass


class PairClass(str, Enum):
    TAIL_TYPE = "tail_type"
    HEAD_TYPE = "head_type"
    OTHER = "other"


class FamilyParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Size of the ground set [n]")
    r: int = Field(..., ge=1, description="Tail size")

    @property
    def k(self) -> int:
        return self.n - 2 * self.r

    def require(self, condition: bool, message: str) -> None:
        if not condition:
            raise ParameterDomainError(f"(n={self.n}, r={self.r}): {message}")

    def __str__(self) -> str:
        return f"H({self.n}:{self.r})"


class HHVertex(BaseModel):
    model_config = ConfigDict(frozen=True)

    head: int = Field(..., ge=1)
    tail: Tuple[int, ...] = Field(..., description="Tail elements in ascending order")

    @field_validator("tail")
    @classmethod
    def _tail_sorted_distinct(cls, tail: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(e < 1 for e in tail):
            raise ValueError("tail elements must be positive")
        if len(set(tail)) != len(tail):
            raise ValueError("tail elements must be distinct")
        return tuple(sorted(tail))

    @model_validator(mode="after")
    def _head_outside_tail(self) -> "HHVertex":
        if self.head in self.tail:
            raise ValueError(f"head {self.head} lies in tail {self.tail}")
        return self

    @property
    def tail_mask(self) -> int:
        mask = 0
        for e in self.tail:
            mask |= 1 << (e - 1)
        return mask

    @property
    def label(self) -> str:
        return f"{self.head};{','.join(str(e) for e in self.tail)}"

    def __str__(self) -> str:
        return f"({self.head},{{{','.join(str(e) for e in self.tail)}}})"


class KneserVertex(BaseModel):
    model_config = ConfigDict(frozen=True)

    subset: Tuple[int, ...]

    @field_validator("subset")
    @classmethod
    def _subset_sorted_distinct(cls, subset: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(e < 1 for e in subset) or len(set(subset)) != len(subset):
            raise ValueError("subset elements must be distinct positive integers")
        return tuple(sorted(subset))

    @property
    def mask(self) -> int:
        mask = 0
        for e in self.subset:
            mask |= 1 << (e - 1)
        return mask

    @property
    def label(self) -> str:
        return ",".join(str(e) for e in self.subset)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.subset) + "}"


class Metric(BaseModel):
    """A graph metric value; ``value is None`` is the INFINITE variant"""

    model_config = ConfigDict(frozen=True)

    value: Optional[int] = Field(None, ge=0)

    @classmethod
    def finite(cls, value: int) -> "Metric":
        return cls(value=value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other: "Metric") -> bool:
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "INFINITE" if self.value is None else str(self.value)


INFINITE = Metric(value=None)


class ClosedFormReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    r: int
    vertex_count: int
    valency: int
    edge_count: int
    diameter_formula: Metric
    odd_girth_formula: Metric
    girth_formula: Metric
    alpha_lower: int
    chi_upper: int
    component_count: int
    kneser_edge_ratio: Optional[int] = None
    fractional_upper_bound: Optional[ExactRational] = None
    flags: List[str] = Field(
        default_factory=list,
        description="Theorem hypotheses that do not hold for these parameters",
    )


class KneserClosedForm(BaseModel):
    n: int
    r: int
    vertex_count: int
    edge_count: int
    diameter: Metric
    odd_girth: Metric
    chromatic_number: int
    independence_number: int


class CellPartition(BaseModel):
    cells: List[List[int]]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(cell) for cell in self.cells)


class QuotientMatrix(BaseModel):
    entries: List[List[int]]

    def row_sums(self) -> List[int]:
        return [sum(row) for row in self.entries]


class VertexSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    members: FrozenSet[int] = Field(default_factory=frozenset)

    @computed_field  # type: ignore[misc]
    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        mask = 0
        for v in self.members:
            mask |= 1 << v
        return mask

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        members = []
        while mask:
            low = mask & -mask
            members.append(low.bit_length() - 1)
            mask ^= low
        return cls(members=frozenset(members))

    def sorted_members(self) -> List[int]:
        return sorted(self.members)


class AlphaResult(BaseModel):
    alpha: int
    witness: VertexSet
    optimality_certified: bool
    method: str = "branch_and_bound"
    nodes: int = 0


class Coloring(BaseModel):
    assignment: List[int] = Field(..., description="Color of each vertex index")

    @computed_field  # type: ignore[misc]
    @property
    def color_count(self) -> int:
        return len(set(self.assignment))

    def classes(self) -> Dict[int, List[int]]:
        result: Dict[int, List[int]] = {}
        for v, c in enumerate(self.assignment):
            result.setdefault(c, []).append(v)
        return result


class ChiResult(BaseModel):
    chi: Optional[int]
    lower: int
    upper: int
    coloring: Coloring
    exact: bool
    method: str = "dsatur"


class WeightedSet(BaseModel):
    members: VertexSet
    weight: ExactRational

    model_config = ConfigDict(arbitrary_types_allowed=True)


class FractionalColoring(BaseModel):
    weighted_sets: List[WeightedSet]

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @computed_field  # type: ignore[misc]
    @property
    def total_weight(self) -> ExactRational:
        return sum((ws.weight for ws in self.weighted_sets), Fraction(0))

    def coverage(self, vertex_count: int) -> List[Fraction]:
        covered = [Fraction(0)] * vertex_count
        for ws in self.weighted_sets:
            for v in ws.members.members:
                covered[v] += ws.weight
        return covered


class VertexMap(BaseModel):
    source: str
    target: str
    mapping: List[int]

    @computed_field  # type: ignore[misc]
    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)


class HomCheck(BaseModel):
    valid: bool
    violation: Optional[Tuple[int, int]] = None


class SetValuedMap(BaseModel):
    source: str
    ground_size: int
    image_size: int
    images: List[int] = Field(
        ..., description="Bitmask over group-element indices, one per source vertex"
    )

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.ground_size, self.image_size)


class Permutation(BaseModel):
    """A permutation of [n]; ``images[e - 1]`` holds sigma(e)"""

    model_config = ConfigDict(frozen=True)

    images: Tuple[int, ...]

    @field_validator("images")
    @classmethod
    def _bijective(cls, images: Tuple[int, ...]) -> Tuple[int, ...]:
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        return images

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, element: int) -> int:
        return self.images[element - 1]

    def map_mask(self, mask: int) -> int:
        image = 0
        e = 0
        while mask:
            if mask & 1:
                image |= 1 << (self.images[e] - 1)
            mask >>= 1
            e += 1
        return image

    def compose(self, other: "Permutation") -> "Permutation":
        """Return self after other"""
        return Permutation(images=tuple(self(other(e)) for e in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for e, image in enumerate(self.images, start=1):
            inv[image - 1] = e
        return Permutation(images=tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(images=tuple(range(1, n + 1)))

    @classmethod
    def reversal(cls, n: int) -> "Permutation":
        return cls(images=tuple(n + 1 - e for e in range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(images=tuple(images))

    @classmethod
    def cycle(cls, n: int) -> "Permutation":
        return cls(images=tuple(e % n + 1 for e in range(1, n + 1)))


class AutResult(BaseModel):
    order: int
    exact: bool
    generators: List[Tuple[int, ...]] = Field(default_factory=list)
    tests: int = 0


class CheckResult(BaseModel):
    name: str
    value: Any = None
    expected: Any = None
    match: bool
    exact: bool = True
    detail: Optional[str] = None


class Report(BaseModel):
    command: str
    params: Dict[str, Any] = Field(default_factory=dict)
    results: List[CheckResult] = Field(default_factory=list)
    witnesses: Optional[Dict[str, Any]] = None
    elapsed_ms: int = 0

    @computed_field  # type: ignore[misc]
    @property
    def exact(self) -> bool:
        return all(result.exact for result in self.results)

    @property
    def passed(self) -> bool:
        return all(result.match and result.exact for result in self.results)
