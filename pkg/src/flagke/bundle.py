"""Admissible bundle data over a painted diagram and the flag of its regular orbits.

A bundle of rank m > 1 is specified by a white A-string of the singular-orbit
diagram, a choice of end root beta (``left``/``right`` in the canonical path
order of the string) and an integer character chi over the black fundamental
weights.  Rank one drops the string and the end choice.

Each eligible string carries a "virtual epsilon sequence" e_1, ..., e_m of
signed basis forms with consecutive differences equal to its simple roots.
For an ordinary string at epsilon indices k..k+m-1 this is (eps_k, ...,
eps_{k+m-1}); a D-string whose last node is the fork tip eps_{l-1}+eps_l
flips the final sign: (..., eps_{l-1}, -eps_l).  White components that admit
no such sequence (the B/C tails through the short/long end root, D components
containing both fork tips) cannot carry the tautological rank-m module in
this formalism and are not strings.

Two dual computations of the sign-normalised form xi_0 of kappa*Z^0 are kept
deliberately separate: `kappa_z0_form` assembles it from black fundamental
weights with shape-dependent neighbour coefficients, `kappa_z0_oracle` from
the virtual epsilon sequence alone.  They must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import pi, sqrt
from typing import Optional

from . import painted as pd
from . import rootspace as rs
from .errors import DomainError, UsageError

# How an end-side black neighbour attaches to the string.
GENERIC = "generic"
B_DOUBLE = "b_double"  # attached through the B double edge (short-root node)
D_FORK = "d_fork"      # the sibling fork tip of a D-string that contains one tip


@dataclass(frozen=True)
class StringInfo:
    """One eligible white A-string, in canonical path order."""

    nodes: tuple[int, ...]
    eps_seq: tuple[tuple[int, int], ...]  # (sign, epsilon index), length m
    left_neighbor: Optional[int]          # black node before the path start
    right_neighbors: tuple[tuple[int, str], ...]  # (black node, attachment shape)

    @property
    def m(self) -> int:
        return len(self.nodes) + 1

    @property
    def start(self) -> int:
        return min(self.nodes)


def eligible_strings(dg: pd.PaintedDiagram) -> tuple[StringInfo, ...]:
    """The white components of `dg` that are A-strings, by ascending start node."""
    alg = dg.algebra
    ell = alg.rank
    fam = alg.family
    out = []
    for comp in pd.white_components(dg):
        members = set(comp)
        if fam in ("B", "C") and ell in members:
            continue
        if fam == "D" and {ell - 1, ell} <= members:
            continue
        nodes = tuple(sorted(comp))  # path order: ascending, D fork tip last
        size = len(nodes)
        if fam == "D" and ell in members:
            # tip node eps_{l-1}+eps_l ends the path; virtual sequence flips
            # the final sign: (eps_{l-size}, ..., eps_{l-1}, -eps_l)
            first = ell - size
            eps = tuple((1, first + i) for i in range(size)) + ((-1, ell),)
        else:
            eps = tuple((1, nodes[0] + i) for i in range(size + 1))
        left_node = eps[0][1] - 1
        left = left_node if left_node in dg.black else None
        right: list[tuple[int, str]] = []
        if fam == "D" and ell - 2 in members:
            # through the fork node: black tips attach on the end side, the
            # sibling of an in-string tip with the fork coefficient
            has_tip = bool(members & {ell - 1, ell})
            for tip in (ell - 1, ell):
                if tip in dg.black:
                    right.append((tip, D_FORK if has_tip else GENERIC))
        elif fam == "D" and nodes[-1] in (ell - 1, ell):
            pass  # isolated fork tip: its only neighbour is the start side
        elif nodes[-1] + 1 <= ell and nodes[-1] + 1 in dg.black:
            shape = B_DOUBLE if (fam == "B" and nodes[-1] + 1 == ell) else GENERIC
            right.append((nodes[-1] + 1, shape))
        out.append(StringInfo(nodes, eps, left, tuple(right)))
    return tuple(sorted(out, key=lambda s: s.start))


@dataclass(frozen=True)
class AdmissibleData:
    """(A_{m-1}, chi, beta) over a painted singular-orbit diagram; m = 1 drops the string."""

    s0: pd.PaintedDiagram
    string: Optional[StringInfo]
    beta_end: Optional[str]  # 'left' | 'right'
    chi: tuple[int, ...]     # over black nodes of s0 in ascending order

    def __post_init__(self):
        if (self.string is None) != (self.beta_end is None):
            raise UsageError("string and beta_end must be given together")
        if self.beta_end not in (None, "left", "right"):
            raise UsageError(f"beta_end must be 'left' or 'right', got {self.beta_end!r}")
        if len(self.chi) != len(self.s0.black):
            raise UsageError(
                f"chi has {len(self.chi)} entries, diagram has {len(self.s0.black)} black nodes"
            )
        if self.string is None and not any(self.chi):
            raise DomainError("rank-one bundle with chi = 0 is degenerate")

    @property
    def m(self) -> int:
        return 1 if self.string is None else self.string.m

    @property
    def beta_node(self) -> Optional[int]:
        if self.string is None:
            return None
        return self.string.nodes[0] if self.beta_end == "left" else self.string.nodes[-1]

    @property
    def black_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.s0.black))


def admissible_data(
    s0: pd.PaintedDiagram,
    string_start: Optional[int],
    beta_end: Optional[str],
    chi: "tuple[int, ...] | list[int]",
) -> AdmissibleData:
    """Build AdmissibleData, resolving the string by its least node index."""
    chi = tuple(int(k) for k in chi)
    if string_start is None:
        return AdmissibleData(s0, None, None, chi)
    for info in eligible_strings(s0):
        if info.start == string_start:
            return AdmissibleData(s0, info, beta_end, chi)
    raise UsageError(f"{s0.key()}: no eligible white string starting at node {string_start}")


def flag_f(data: AdmissibleData) -> pd.PaintedDiagram:
    """The flag of the regular orbits: s0 with the end root beta painted black."""
    if data.string is None:
        return data.s0
    return pd.PaintedDiagram(data.s0.algebra, data.s0.black | {data.beta_node})


def chi_weight(data: AdmissibleData) -> rs.Weight:
    """chi as a weight: sum of k_j times the black fundamental weights."""
    return _chi_weight_cached(data.s0.algebra, data.black_nodes, data.chi)


@lru_cache(maxsize=65536)
def _chi_weight_cached(alg: rs.Algebra, nodes: tuple[int, ...], chi: tuple[int, ...]) -> rs.Weight:
    coeffs = [Fraction(0)] * alg.ambient_dim
    for k, node in zip(chi, nodes):
        if k:
            for i, c in enumerate(rs.fundamental_weight(alg, node).coeffs):
                if c:
                    coeffs[i] += k * c
    return rs.Weight._raw(alg, tuple(coeffs))


@lru_cache(maxsize=None)
def _string_w_over_m(alg: rs.Algebra, eps_seq: tuple, beta_end: str, m: int) -> rs.Weight:
    """((m-1) e_edge - sum of the other virtual epsilons) / m, edge by beta_end."""
    seq = tuple(reversed(eps_seq)) if beta_end == "right" else eps_seq
    coeffs = [Fraction(0)] * alg.ambient_dim
    sign0, idx0 = seq[0]
    coeffs[idx0 - 1] += Fraction((m - 1) * sign0, m)
    for sign, idx in seq[1:]:
        coeffs[idx - 1] -= Fraction(sign, m)
    return rs.Weight._raw(alg, tuple(coeffs))


def _normalise_sign(data: AdmissibleData, xi: rs.Weight) -> rs.Weight:
    val = _beta_pairing(data.s0.algebra, data.beta_node, xi)
    if val == 0:
        raise AssertionError(f"degenerate sign normalisation for {data}")
    return xi if val > 0 else -xi


def _beta_pairing(alg: rs.Algebra, node: int, xi: rs.Weight) -> Fraction:
    """<beta_node, xi> up to a positive factor: simple roots are sparse, and
    pairing against a root makes the family-A projection a no-op."""
    c = xi.coeffs
    ell = alg.rank
    if node == ell:
        if alg.family == "B":
            return c[ell - 1]
        if alg.family == "C":
            return c[ell - 1]
        if alg.family == "D":
            return c[ell - 2] + c[ell - 1]
    return c[node - 1] - c[node]


def kappa_z0_oracle(data: AdmissibleData) -> rs.Weight:
    """xi_0 from the virtual epsilon sequence: +-(chi + w/m), sign-normalised."""
    chi = chi_weight(data)
    if data.string is None:
        if chi.is_zero():
            raise DomainError("rank-one bundle with chi = 0 is degenerate")
        return chi
    xi = chi + _string_w_over_m(data.s0.algebra, data.string.eps_seq, data.beta_end, data.m)
    return _normalise_sign(data, xi)


def kappa_z0_form(data: AdmissibleData) -> rs.Weight:
    """xi_0 assembled from black fundamental weights (shape-aware coefficients).

    Left end:  chi + pi_0 - ((m-1)/m) pi_s - (c/m) pi_{s+1},
    right end: -chi + pi_0 - (1/m) pi_s - (c(m-1)/m -> see table) pi_{s+1},
    with c = 1 generically, while an end neighbour attached through the B
    double edge contributes 2/m (left) resp. 2(m-1)/m (right) and the sibling
    D fork tip 2/m (left) resp. (m-2)/m (right).  Absent neighbours simply
    drop out.  Sign-normalised so that <beta, xi_0> > 0.
    """
    chi = chi_weight(data)
    if data.string is None:
        if chi.is_zero():
            raise DomainError("rank-one bundle with chi = 0 is degenerate")
        return chi
    base = _form_base(data.s0.algebra, data.string, data.beta_end, data.beta_node)
    xi = (chi if data.beta_end == "left" else -chi) + base
    return _normalise_sign(data, xi)


@lru_cache(maxsize=None)
def _form_base(alg: rs.Algebra, info: StringInfo, beta_end: str, beta_node: int) -> rs.Weight:
    """The chi-independent neighbour combination of the dual-form formula."""
    m = info.m
    left = beta_end == "left"
    xi = rs.fundamental_weight(alg, beta_node)
    start_coef = Fraction(m - 1, m) if left else Fraction(1, m)
    end_coef = {
        GENERIC: Fraction(1, m) if left else Fraction(m - 1, m),
        B_DOUBLE: Fraction(2, m) if left else Fraction(2 * (m - 1), m),
        D_FORK: Fraction(2, m) if left else Fraction(m - 2, m),
    }
    if info.left_neighbor is not None:
        xi = xi - start_coef * rs.fundamental_weight(alg, info.left_neighbor)
    for node, shape in info.right_neighbors:
        coef = end_coef[shape]
        if coef:
            xi = xi - coef * rs.fundamental_weight(alg, node)
    return xi


def kappa(data: AdmissibleData) -> tuple[Fraction, float]:
    """(kappa^2 exact, kappa float): the squared Killing norm of xi_0."""
    xi = kappa_z0_form(data)
    ksq = rs.inner(xi, xi)
    if ksq <= 0:
        raise AssertionError(f"kappa^2 = {ksq} must be positive")
    return ksq, sqrt(ksq)


@dataclass(frozen=True)
class BundleGeometry:
    """The flag of the regular orbits together with the normalised center
    direction: its dual form xi_0, the norm kappa and the circle period
    t0 = 2 pi / kappa."""

    f_diagram: pd.PaintedDiagram
    xi0: rs.Weight
    kappa_sq: Fraction
    kappa: float
    t0: float


def bundle_geometry(data: AdmissibleData) -> BundleGeometry:
    xi0 = kappa_z0_form(data)
    ksq, kap = kappa(data)
    return BundleGeometry(flag_f(data), xi0, ksq, kap, 2 * pi / kap)


def predicted_koszul_update(data: AdmissibleData) -> dict[int, int]:
    """Koszul numbers of flag_f(data) predicted from those of s0.

    The new node gets m; the start-side neighbour loses m-1 (left) or 1
    (right); each end-side neighbour loses 1 / m-1 generically, 2 / 2(m-1)
    through the B double edge, 2 / m-2 at the D fork; other blacks keep n_j.
    """
    if data.m == 1:
        raise UsageError("koszul update is defined for m > 1 only")
    m = data.m
    left = data.beta_end == "left"
    base = pd.koszul(data.s0).numbers if data.s0.black else {}
    predicted = dict(base)
    predicted[data.beta_node] = m
    info = data.string
    if info.left_neighbor is not None:
        predicted[info.left_neighbor] = base[info.left_neighbor] - ((m - 1) if left else 1)
    drop = {
        GENERIC: 1 if left else m - 1,
        B_DOUBLE: 2 if left else 2 * (m - 1),
        D_FORK: 2 if left else m - 2,
    }
    for node, shape in info.right_neighbors:
        predicted[node] = base[node] - drop[shape]
    return predicted


def koszul_update_check(data: AdmissibleData) -> bool:
    """True iff the Koszul numbers of flag_f(data) satisfy the update relations."""
    actual = pd.koszul(flag_f(data)).numbers
    return actual == predicted_koszul_update(data)
