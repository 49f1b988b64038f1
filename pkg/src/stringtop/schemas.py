from pydantic import BaseModel, ConfigDict, Field, computed_field

SCHEMA_VERSION = 1


class CheckResult(BaseModel):
    """One named check with an optional failure detail"""

    name: str
    passed: bool
    detail: str | None = None


class CheckReport(BaseModel):
    """
    Pass/fail list produced by check_frobenius.
    Failures are report content, never exceptions.
    """

    subject: str
    checks: list[CheckResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def result(self, name: str) -> CheckResult:
        return next(check for check in self.checks if check.name == name)


class Violation(BaseModel):
    """A single failed identity instance"""

    identity: str
    m: int
    tdeg: int
    detail: str


class ViolationReport(BaseModel):
    """Report for identity sweeps (bicomplex, duality, BV)"""

    subject: str
    checked: int = 0
    violations: list[Violation] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations


class Document(BaseModel):
    """Top-level envelope for every JSON document the CLI writes"""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, serialization_alias="schema")
    command: str
    manifold: str
    passed: bool
    rows: list[dict] = Field(default_factory=list)
    details: dict = Field(default_factory=dict)


class AlgebraRow(BaseModel):
    index: int
    name: str
    degree: int


class ProductRow(BaseModel):
    left: str
    right: str
    product: str


class HHRow(BaseModel):
    manifold: str
    m: int
    tdeg: int
    dim: int
    labels: list[str]
    presented: int | None = None


class DeltaRow(BaseModel):
    manifold: str
    label: str
    hdeg: int
    tdeg: int
    closed_form: str
    brute_force: str | None = None
    agrees: bool = True


class BracketRow(BaseModel):
    manifold: str
    left: str
    right: str
    expected: str
    computed: str
    agrees: bool


class PageRow(BaseModel):
    manifold: str
    r: int
    p: int
    q: int
    dim: int
    labels: list[str] = Field(default_factory=list)


class ClassificationRow(BaseModel):
    manifold: str
    label: str
    hdeg: int
    tdeg: int
    delta: str
    kind: str


class InequalityWitness(BaseModel):
    """One (r, level, case) instance of the collapse degree comparison"""

    r: int
    level: int
    case: str  # "even-to-odd" or "odd-to-even"
    source_hdeg: int
    target_hdeg: int
    source_min: int | None
    target_max: int | None
    degree_shift: int  # topological degree of d_r, 2r - 1
    slack: int | None  # target_max - (source_min + degree_shift); must be negative
    strict_slack: int | None  # target_max - (source_min + 1)
    holds: bool


class DisplayedInequality(BaseModel):
    """The odd projective inequalities evaluated verbatim"""

    r: int
    expression: str
    value: int
    holds: bool


class CertificateReport(BaseModel):
    manifold: str
    r_max: int
    l_range: tuple[int, int]
    witnesses: list[InequalityWitness] = Field(default_factory=list)
    displayed: list[DisplayedInequality] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(w.holds for w in self.witnesses) and all(
            d.holds for d in self.displayed
        )

    @property
    def unresolved(self) -> list[InequalityWitness]:
        return [w for w in self.witnesses if not w.holds]


class Mismatch(BaseModel):
    exponent: int
    left: int
    right: int


class VerifyReport(BaseModel):
    manifold: str
    lo: int
    hi: int
    reference: str  # "displayed" or "corrected"
    coefficients: list[int]
    mismatch: Mismatch | None = None
    displayed_mismatch: Mismatch | None = None

    @computed_field
    @property
    def passed(self) -> bool:
        return self.mismatch is None


class HcfRow(BaseModel):
    manifold: str
    degree: int
    dim: int


class HcfTable(BaseModel):
    manifold: str
    column_cap: int
    required_cap: int
    truncated: bool
    rows: list[HcfRow]

    def dims(self) -> dict[int, int]:
        return {row.degree: row.dim for row in self.rows}
