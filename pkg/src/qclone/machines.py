"""Symmetric 1-to-2 qubit cloning machines.

A machine in the explicit family is defined by four apparatus vectors
(Q0, Q1, Y0, Y1) in a d-dimensional apparatus space through the two basis
rules

    |0>|blank>|Q>  ->  |00> Q0 + (|01> + |10>) Y0
    |1>|blank>|Q>  ->  |11> Q1 + (|01> + |10>) Y1

extended linearly to any input qubit. Unitarity forces

    <Qi|Qi> + 2 <Yi|Yi> = 1   (i = 0, 1)      and      <Y0|Y1> = 0,

and the whole family is summarized by the real triple

    zeta = <Y0|Y0> = <Y1|Y1>,   eta = 2 <Y0|Q1>,   kappa = 2 <Q0|Y0>.

The Cauchy-Schwarz bounds 0 <= zeta <= 1/2 and 0 <= eta, kappa <=
2 sqrt(zeta (1 - 2 zeta)) are necessary but not sufficient for such vectors
to exist; realizability is the positive semidefiniteness of their 4x4 Gram
matrix for some free overlap q = <Q0|Q1>, which reduces to the closed
condition kappa^2 + eta^2 <= 4 zeta (1 - 2 zeta) (cross-checked against a
brute-force eigenvalue scan in the test suite).

For an input on the x-z main circle, cos(theta/2)|0> +/- sin(theta/2)|1>,
each clone's reduced state and fidelity have closed forms:

    <0|rho|0> = cos^2(theta/2) - zeta cos(theta)
    <1|rho|1> = sin^2(theta/2) + zeta cos(theta)
    off-diagonal = (kappa +/- eta sin(theta)) / 2

    F(theta) = (1 - zeta) - (1 - eta - 2 zeta) sin^2(theta) / 2
               +/- (kappa / 2) sin(theta)

with '+' on the Eastern branch (phi = 0) and '-' on the Western (phi = pi).

The meridional machine is the member at (zeta, eta, kappa) =
(1/10, 2/5, 2/5); it copies every Eastern-meridian state with fidelity
between 0.90 and 0.95. Universal and equatorial machines are modeled as
constant-fidelity channels (F = 5/6 and 1/2 + sqrt(1/8)) acting on each
clone marginal independently, which is all the single-clone analysis here
needs; their joint two-clone correlations are out of scope.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .qcore import (
    DensityMatrix,
    PureQubit,
    StateVector,
    partial_trace,
    to_density,
)

UNITARITY_TOL = 1e-10

UNIVERSAL_FIDELITY = 5.0 / 6.0
EQUATORIAL_FIDELITY = 0.5 + np.sqrt(1.0 / 8.0)


@dataclass(frozen=True)
class BHParams:
    """Apparatus inner products (zeta, eta, kappa) of an explicit machine.

    The valid domain is the realizability region checked by feasible();
    construction itself only requires finite values so that arbitrary
    triples can be queried.
    """

    zeta: float
    eta: float
    kappa: float

    def __post_init__(self):
        vals = (float(self.zeta), float(self.eta), float(self.kappa))
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("machine parameters must be finite")
        object.__setattr__(self, "zeta", vals[0])
        object.__setattr__(self, "eta", vals[1])
        object.__setattr__(self, "kappa", vals[2])


def feasible(p: BHParams) -> bool:
    """Whether (zeta, eta, kappa) describes a realizable machine.

    True iff 0 <= zeta <= 1/2, eta >= 0, kappa >= 0 and the Gram matrix of
    the four apparatus vectors is positive semidefinite for some overlap
    q = <Q0|Q1>, equivalently kappa^2 + eta^2 <= 4 zeta (1 - 2 zeta).
    """
    z, e, k = p.zeta, p.eta, p.kappa
    if not (0.0 <= z <= 0.5 and e >= 0.0 and k >= 0.0):
        return False
    return k * k + e * e <= 4.0 * z * (1.0 - 2.0 * z)


def gram_matrix(p: BHParams, q_overlap: float) -> np.ndarray:
    """4x4 Gram matrix of (Q0, Q1, Y0, Y1) at a given overlap q = <Q0|Q1>."""
    z, e, k = p.zeta, p.eta, p.kappa
    q = float(q_overlap)
    return np.array([
        [1 - 2 * z, q, k / 2, e / 2],
        [q, 1 - 2 * z, e / 2, k / 2],
        [k / 2, e / 2, z, 0.0],
        [e / 2, k / 2, 0.0, z],
    ])


@dataclass(frozen=True, eq=False)
class CloningSpec:
    """A cloning machine: explicit apparatus vectors or a fidelity channel.

    variant 'explicit' carries the four d-vectors (d in {2, 3, 4}); variant
    'channel' carries a single clone fidelity in [1/2, 1] and maps each
    clone marginal to F |s><s| + (1-F) |s_perp><s_perp|. Construction
    validates shapes and ranges only; the unitarity equalities are checked
    by validate_unitarity so that near-miss specs can be diagnosed.
    """

    variant: str
    name: str = ""
    apparatus_dim: int | None = None
    q0: np.ndarray | None = None
    q1: np.ndarray | None = None
    y0: np.ndarray | None = None
    y1: np.ndarray | None = None
    clone_fidelity: float | None = None

    def __post_init__(self):
        if self.variant == "explicit":
            d = self.apparatus_dim
            if d is None or int(d) not in (2, 3, 4):
                raise ValueError(f"apparatus_dim must be 2, 3 or 4, got {d}")
            d = int(d)
            object.__setattr__(self, "apparatus_dim", d)
            for attr in ("q0", "q1", "y0", "y1"):
                vec = getattr(self, attr)
                if vec is None:
                    raise ValueError(f"explicit spec is missing vector {attr}")
                arr = np.array(vec, dtype=np.complex128, copy=True)
                if arr.shape != (d,):
                    raise ValueError(f"{attr} must have length {d}, got {arr.shape}")
                if not np.all(np.isfinite(arr.view(np.float64))):
                    raise ValueError(f"{attr} has non-finite entries")
                arr.setflags(write=False)
                object.__setattr__(self, attr, arr)
            if self.clone_fidelity is not None:
                raise ValueError("explicit spec does not take clone_fidelity")
        elif self.variant == "channel":
            f = self.clone_fidelity
            if f is None or not np.isfinite(f) or not 0.5 <= float(f) <= 1.0:
                raise ValueError(f"channel fidelity must lie in [1/2, 1], got {f}")
            object.__setattr__(self, "clone_fidelity", float(f))
            if any(getattr(self, a) is not None for a in ("q0", "q1", "y0", "y1")):
                raise ValueError("channel spec does not take apparatus vectors")
            if self.apparatus_dim is not None:
                raise ValueError("channel spec does not take apparatus_dim")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def q_overlap(self) -> float:
        """Derived overlap <Q0|Q1> (real part)."""
        self._require_explicit("q_overlap")
        return float(np.vdot(self.q0, self.q1).real)

    def bh_params(self) -> BHParams:
        """Extract (zeta, eta, kappa) from the apparatus vectors."""
        self._require_explicit("bh_params")
        zeta = float(np.vdot(self.y0, self.y0).real)
        eta = 2.0 * float(np.vdot(self.y0, self.q1).real)
        kappa = 2.0 * float(np.vdot(self.q0, self.y0).real)
        return BHParams(zeta, eta, kappa)

    def _require_explicit(self, what: str):
        if self.variant != "explicit":
            raise ValueError(f"{what} is only defined for explicit specs")


@dataclass(frozen=True)
class ValidationReport:
    """Named unitarity residuals of an explicit spec."""

    residuals: dict
    tolerance: float = UNITARITY_TOL

    @property
    def passed(self) -> bool:
        return all(abs(r) <= self.tolerance for r in self.residuals.values())


def validate_unitarity(spec: CloningSpec) -> ValidationReport:
    """Residuals of the unitarity conditions on an explicit spec.

    Reports the two row-norm sums <Qi|Qi> + 2 <Yi|Yi> - 1, the cross sum
    2 <Y0|Y1> between the two basis rules, plus the equal-Y-norm and
    Y-orthogonality invariants. Passes iff all magnitudes are <= 1e-10.
    """
    if spec.variant != "explicit":
        raise ValueError("validate_unitarity applies to explicit specs only")
    qq0 = np.vdot(spec.q0, spec.q0).real
    qq1 = np.vdot(spec.q1, spec.q1).real
    yy0 = np.vdot(spec.y0, spec.y0).real
    yy1 = np.vdot(spec.y1, spec.y1).real
    y0y1 = np.vdot(spec.y0, spec.y1)
    residuals = {
        "row0_norm": qq0 + 2 * yy0 - 1.0,
        "row1_norm": qq1 + 2 * yy1 - 1.0,
        "cross_sum": 2 * abs(y0y1),
        "y_orthogonality": abs(y0y1),
        "y_norm_balance": yy0 - yy1,
    }
    return ValidationReport(residuals)


def synthesize(p: BHParams) -> CloningSpec:
    """Build explicit apparatus vectors realizing the given (zeta, eta, kappa).

    The free overlap q = <Q0|Q1> is unconstrained by any single-clone
    observable; it is fixed at the midpoint of its admissible interval
    [(kappa+eta)^2/(4 zeta) - (1-2 zeta), (1-2 zeta) - (kappa-eta)^2/(4 zeta)]
    (q = 0 when zeta = 0 and the Y vectors vanish), which maximizes the
    positivity margin. Vectors are rows of a spectral square root of the
    Gram matrix; eigenvalues below 1e-12 are clamped to zero, and the
    apparatus dimension is the resulting rank.
    """
    if not feasible(p):
        raise ValueError(
            f"parameters (zeta={p.zeta}, eta={p.eta}, kappa={p.kappa}) are not "
            "realizable: kappa^2 + eta^2 must not exceed 4*zeta*(1 - 2*zeta)")
    z, e, k = p.zeta, p.eta, p.kappa
    if z == 0.0:
        q = 0.0
    else:
        lo = (k + e) ** 2 / (4 * z) - (1 - 2 * z)
        hi = (1 - 2 * z) - (k - e) ** 2 / (4 * z)
        q = (lo + hi) / 2
    gram = gram_matrix(p, q)
    eigvals, eigvecs = np.linalg.eigh(gram)
    eigvals = np.where(eigvals < 1e-12, 0.0, eigvals)
    cols = np.nonzero(eigvals > 0.0)[0]
    rows = eigvecs[:, cols] * np.sqrt(eigvals[cols])
    dim = len(cols)
    return CloningSpec(
        variant="explicit",
        name="synthesized",
        apparatus_dim=dim,
        q0=rows[0],
        q1=rows[1],
        y0=rows[2],
        y1=rows[3],
    )


def meridional_spec() -> CloningSpec:
    """The machine optimal for the Eastern meridian: 0.90 <= F <= 0.95.

    Its apparatus vectors Y0 = (1/sqrt(10), 0), Y1 = (0, 1/sqrt(10)),
    Q0 = Q1 = (sqrt(2/5), sqrt(2/5)) span a two-dimensional space and
    realize (zeta, eta, kappa) = (1/10, 2/5, 2/5).
    """
    r10 = 1.0 / np.sqrt(10.0)
    r25 = np.sqrt(2.0 / 5.0)
    return CloningSpec(
        variant="explicit",
        name="meridional",
        apparatus_dim=2,
        q0=np.array([r25, r25]),
        q1=np.array([r25, r25]),
        y0=np.array([r10, 0.0]),
        y1=np.array([0.0, r10]),
    )


def wootters_zurek_spec() -> CloningSpec:
    """The basis-copying machine: exact on |0> and |1>, F = 1 - sin^2(theta)/2."""
    return CloningSpec(
        variant="explicit",
        name="wootters-zurek",
        apparatus_dim=2,
        q0=np.array([1.0, 0.0]),
        q1=np.array([0.0, 1.0]),
        y0=np.zeros(2),
        y1=np.zeros(2),
    )


def channel_spec(fidelity: float, name: str = "") -> CloningSpec:
    """Constant-fidelity channel model: each clone marginal is
    F |s><s| + (1-F) |s_perp><s_perp| regardless of the input state."""
    return CloningSpec(variant="channel", name=name, clone_fidelity=fidelity)


BUILTIN_MACHINES = ("meridional", "wootters-zurek", "universal", "equatorial", "ideal")


def builtin_spec(name: str) -> CloningSpec:
    """Look up a built-in machine by name."""
    if name == "meridional":
        return meridional_spec()
    if name == "wootters-zurek":
        return wootters_zurek_spec()
    if name == "universal":
        return channel_spec(UNIVERSAL_FIDELITY, "universal")
    if name == "equatorial":
        return channel_spec(EQUATORIAL_FIDELITY, "equatorial")
    if name == "ideal":
        return channel_spec(1.0, "ideal")
    raise ValueError(f"unknown machine {name!r}; built-ins: {', '.join(BUILTIN_MACHINES)}")


@dataclass(frozen=True, eq=False)
class CloneOutput:
    """Output of a cloning operation.

    Explicit machines carry the joint (a, b, apparatus) state and the
    two-qubit reduction; channel machines provide marginals only.
    """

    rho_a: DensityMatrix
    rho_b: DensityMatrix
    joint: StateVector | None = None
    rho_ab: DensityMatrix | None = None


def clone(spec: CloningSpec, state: PureQubit) -> CloneOutput:
    """Apply a cloning machine to a pure input qubit.

    Explicit variant: extends the two basis rules linearly, giving the joint
    pure state alpha (|00> Q0 + (|01>+|10>) Y0) + beta (|11> Q1 +
    (|01>+|10>) Y1), then reduces by partial trace. Channel variant: applies
    the constant-fidelity law to each marginal.
    """
    alpha, beta = state.amplitudes
    if spec.variant == "channel":
        f = spec.clone_fidelity
        s = state.amplitudes
        s_perp = np.array([-np.conj(s[1]), np.conj(s[0])])
        mat = f * np.outer(s, s.conj()) + (1 - f) * np.outer(s_perp, s_perp.conj())
        rho = DensityMatrix((2,), mat)
        return CloneOutput(rho_a=rho, rho_b=rho)
    report = validate_unitarity(spec)
    if not report.passed:
        worst = max(report.residuals, key=lambda k: abs(report.residuals[k]))
        raise ValueError(
            f"spec violates unitarity: residual {worst} = {report.residuals[worst]:.3e}")
    d = spec.apparatus_dim
    joint = np.zeros((2, 2, d), dtype=np.complex128)
    joint[0, 0] = alpha * spec.q0
    joint[1, 1] = beta * spec.q1
    cross = alpha * spec.y0 + beta * spec.y1
    joint[0, 1] = cross
    joint[1, 0] = cross
    amps = joint.reshape(-1)
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"joint output norm {norm} is far from 1; spec is invalid")
    vec = StateVector((2, 2, d), amps / norm)
    rho_full = to_density(vec)
    return CloneOutput(
        rho_a=partial_trace(rho_full, (0,)),
        rho_b=partial_trace(rho_full, (1,)),
        joint=vec,
        rho_ab=partial_trace(rho_full, (0, 1)),
    )


def _check_main_circle_args(p: BHParams, theta: float, sign: str):
    if not feasible(p):
        raise ValueError(
            f"parameters (zeta={p.zeta}, eta={p.eta}, kappa={p.kappa}) are not realizable")
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def reduced_output_closed_form(p: BHParams, theta: float, sign: str) -> DensityMatrix:
    """Single-clone output for a main-circle input, in closed form."""
    _check_main_circle_args(p, theta, sign)
    z, e, k = p.zeta, p.eta, p.kappa
    c2 = np.cos(theta / 2) ** 2
    s2 = np.sin(theta / 2) ** 2
    ct, st = np.cos(theta), np.sin(theta)
    off = (k + e * st) / 2 if sign == "+" else (k - e * st) / 2
    mat = np.array([[c2 - z * ct, off], [off, s2 + z * ct]])
    return DensityMatrix((2,), mat)


def fidelity_closed_form(p: BHParams, theta: float, sign: str) -> float:
    """Input-output fidelity for a main-circle input, in closed form."""
    _check_main_circle_args(p, theta, sign)
    z, e, k = p.zeta, p.eta, p.kappa
    st = np.sin(theta)
    branch = st if sign == "+" else -st
    return float((1 - z) - 0.5 * (1 - e - 2 * z) * st * st + (k / 2) * branch)


def meridional_fidelity_general(theta: float, phi: float) -> float:
    """Meridional-machine fidelity for an arbitrary Bloch input (theta, phi):
    9/10 - (1/5) sin(theta) (sin(theta) - cos(phi))."""
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if not 0.0 <= phi < 2 * np.pi:
        raise ValueError(f"phi must lie in [0, 2*pi), got {phi}")
    st = np.sin(theta)
    return float(0.9 - 0.2 * st * (st - np.cos(phi)))


# ---------------------------------------------------------------------------
# machine-spec files: a small JSON document with fields `name`, `variant`,
# and either the four vectors as [re, im] pair lists (explicit) or a
# `fidelity` value (channel). Written deterministically so save -> load ->
# save is byte-stable.

def spec_to_dict(spec: CloningSpec) -> dict:
    doc = {"name": spec.name, "variant": spec.variant}
    if spec.variant == "explicit":
        doc["apparatus_dim"] = spec.apparatus_dim
        for key, vec in (("Q0", spec.q0), ("Q1", spec.q1),
                         ("Y0", spec.y0), ("Y1", spec.y1)):
            doc[key] = [[float(c.real), float(c.imag)] for c in vec]
    else:
        doc["fidelity"] = spec.clone_fidelity
    return doc


def spec_from_dict(doc: dict) -> CloningSpec:
    if not isinstance(doc, dict) or "variant" not in doc:
        raise ValueError("machine file must be a mapping with a 'variant' field")
    variant = doc["variant"]
    name = doc.get("name", "")
    if variant == "explicit":
        missing = [k for k in ("apparatus_dim", "Q0", "Q1", "Y0", "Y1") if k not in doc]
        if missing:
            raise ValueError(f"explicit machine file is missing fields: {missing}")
        vecs = {}
        for key in ("Q0", "Q1", "Y0", "Y1"):
            pairs = doc[key]
            try:
                vecs[key] = np.array([complex(re, im) for re, im in pairs])
            except (TypeError, ValueError) as exc:
                raise ValueError(f"field {key} must be a list of [re, im] pairs") from exc
        return CloningSpec(
            variant="explicit",
            name=name,
            apparatus_dim=doc["apparatus_dim"],
            q0=vecs["Q0"],
            q1=vecs["Q1"],
            y0=vecs["Y0"],
            y1=vecs["Y1"],
        )
    if variant == "channel":
        if "fidelity" not in doc:
            raise ValueError("channel machine file is missing the 'fidelity' field")
        return CloningSpec(variant="channel", name=name, clone_fidelity=doc["fidelity"])
    raise ValueError(f"unknown variant {variant!r} in machine file")


def save_spec(spec: CloningSpec, path) -> None:
    """Write a machine-spec file (JSON, LF line endings)."""
    text = json.dumps(spec_to_dict(spec), indent=2) + "\n"
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def load_spec(path) -> CloningSpec:
    """Read a machine-spec file written by save_spec."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"machine file {path} is not valid JSON: {exc}") from exc
    return spec_from_dict(doc)
