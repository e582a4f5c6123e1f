"""Exact-rational bound evaluation and end-to-end certification.

Every pass/fail comparison against the conjectured bound or the explicit
counterexample formulas happens in exact rational arithmetic (Fraction).
The one irrational quantity in play, powers with exponent log2(3), is
handled by certified interval enclosures: the exponent is bracketed by two
continued-fraction convergents verified at runtime through pure integer
power comparisons, the power itself by a fixed-point square-root chain with
directed rounding.  Comparisons against such enclosures return an honest
None when the interval straddles the target, and the bracket can be
tightened by mediant refinement before giving up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import cycles
from .errors import BadParity, EllTooSmall, NonpositiveD

# consecutive continued-fraction convergents of log2(3); verified before use
_LOG2_3_LO = (176251, 111202)
_LOG2_3_HI = (301994, 190537)
_bracket: list[tuple[int, int]] | None = None


def _power_of_two_less_than_power_of_three(p: int, q: int) -> bool:
    """2**p < 3**q by bit length; equality is impossible for q > 0."""
    return p < pow(3, q).bit_length()


def _log2_3_bracket(refine: int = 0) -> tuple[Fraction, Fraction]:
    """A verified rational bracket of log2(3), optionally mediant-refined."""
    global _bracket
    if _bracket is None:
        p, q = _LOG2_3_LO
        assert _power_of_two_less_than_power_of_three(p, q)
        ph, qh = _LOG2_3_HI
        assert not _power_of_two_less_than_power_of_three(ph, qh)
        _bracket = [(p, q), (ph, qh)]
    while refine > 0:
        (p, q), (ph, qh) = _bracket
        m = (p + ph, q + qh)
        if _power_of_two_less_than_power_of_three(*m):
            _bracket = [m, (ph, qh)]
        else:
            _bracket = [(p, q), m]
        refine -= 1
    (p, q), (ph, qh) = _bracket
    return Fraction(p, q), Fraction(ph, qh)


def rational_power_interval(
    base: int,
    exp_lo: Fraction,
    exp_hi: Fraction,
    bits: int = 96,
) -> tuple[Fraction, Fraction]:
    """Certified enclosure of base**x for x in [exp_lo, exp_hi], base >= 2.

    Exponents are widened to dyadic rationals, then evaluated through a
    chain of fixed-point integer square roots with directed rounding: the
    lower endpoint always rounds down, the upper always up.
    """
    if base < 2 or exp_lo <= 0 or exp_hi < exp_lo:
        raise ValueError("need base >= 2 and 0 < exp_lo <= exp_hi")
    s = bits
    scale = 1 << bits

    def dyadic_pow(d: int, round_up: bool) -> Fraction:
        # base ** (d / 2**s) in fixed point with `bits` fractional bits;
        # lo/hi walk the square-root chain base ** 2**-j with directed rounding
        whole, frac = d >> s, d & (scale - 1)
        lo = hi = base << bits
        acc_lo = acc_hi = 1 << bits
        for j in range(1, s + 1):
            lo = isqrt(lo << bits)
            hi = isqrt(hi << bits) + 1
            if (frac >> (s - j)) & 1:
                acc_lo = (acc_lo * lo) >> bits
                acc_hi = ((acc_hi * hi) >> bits) + 1
        val = acc_hi if round_up else acc_lo
        return Fraction(val * base**whole, scale)

    lo_dyadic = (exp_lo.numerator << s) // exp_lo.denominator
    hi_dyadic = -((-exp_hi.numerator << s) // exp_hi.denominator)
    return dyadic_pow(lo_dyadic, False), dyadic_pow(hi_dyadic, True)


def pow_log2_3_interval(ell: int, bits: int = 96, refine: int = 0) -> tuple[Fraction, Fraction]:
    """Certified enclosure of ell ** log2(3); exact when ell is a power of 2."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if ell == 1:
        return Fraction(1), Fraction(1)
    if ell & (ell - 1) == 0:
        exact = Fraction(3 ** (ell.bit_length() - 1))
        return exact, exact
    lo, hi = _log2_3_bracket(refine)
    return rational_power_interval(ell, lo, hi, bits)


def pow_log3_2_interval(n: int, bits: int = 96, refine: int = 0) -> tuple[Fraction, Fraction]:
    """Certified enclosure of n ** log3(2) (the reciprocal exponent)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Fraction(1), Fraction(1)
    lo, hi = _log2_3_bracket(refine)
    return rational_power_interval(n, 1 / hi, 1 / lo, bits)


def moon_moser_bound(n: int, bits: int = 96) -> tuple[Fraction, Fraction]:
    """Enclosure of (7/2) n**log3(2), the classical sublinear cycle bound."""
    lo, hi = pow_log3_2_interval(n, bits)
    return Fraction(7, 2) * lo, Fraction(7, 2) * hi


# ---------------------------------------------------------------------------
# bound formulas
# ---------------------------------------------------------------------------

def conjectured_bound(ell: int, n: int) -> Fraction:
    """The conjectured planar Turan bound 3(l-1)/l * n - 6(l+1)/l, exactly."""
    if ell < 7:
        raise EllTooSmall(f"the bound is posed for l >= 7, got {ell}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return Fraction(3 * (ell - 1) * n - 6 * (ell + 1), ell)


def counterexample_coefficients(ell: int) -> tuple[Fraction, Fraction]:
    """Edge-density slopes of the odd- and even-l counterexample families.

    a1 = 9(l-5)(l-1) / ((3l-13)(l-1) - 4) for odd l,
    a2 = 3(3l-16)(l-1) / ((3l-14)(l-1) - 4) for even l; both exceed
    3(l-1)/l for every l >= 11, which is what makes the construction beat
    the conjectured bound.
    """
    if ell < 11:
        raise EllTooSmall(f"counterexamples require l >= 11, got {ell}")
    a1 = Fraction(9 * (ell - 5) * (ell - 1), (3 * ell - 13) * (ell - 1) - 4)
    a2 = Fraction(3 * (3 * ell - 16) * (ell - 1), (3 * ell - 14) * (ell - 1) - 4)
    return a1, a2


def host_order(ell: int, k: int) -> int:
    """Order of the girth-(l+1) dense host: (5l - 5) k/2 - l + 3."""
    return (5 * ell - 5) * k // 2 - ell + 3


def counterexample_order(ell: int, k: int) -> int:
    """Exact order of the l-counterexample built at host parameter k.

    Odd l uses the gadget on 3(l-1)/2 - 4 vertices, even l the one on
    3l/2 - 6; both give n = host_order * (n_B - 1) - (5k - 4), matching the
    constructed graph vertex for vertex.
    """
    if ell < 11:
        raise EllTooSmall(f"counterexamples require l >= 11, got {ell}")
    if k < 2 or k % 2 != 0:
        raise BadParity(f"k must be a positive even integer, got {k}")
    if ell % 2 == 1:
        n_b = 3 * (ell - 1) // 2 - 4
    else:
        n_b = 3 * ell // 2 - 6
    return host_order(ell, k) * (n_b - 1) - (5 * k - 4)


def gadget_size_for(ell: int) -> tuple[int, bool]:
    """Stacking parameter (t, extra) whose gadget has every cycle below l."""
    if ell < 11:
        raise EllTooSmall(f"counterexamples require l >= 11, got {ell}")
    if ell % 2 == 1:
        return (ell - 1) // 2, False
    return ell // 2 - 1, True


def revised_bound(
    ell: int,
    n: int,
    d: Fraction | int = 1,
    bits: int = 96,
) -> tuple[Fraction, Fraction]:
    """Enclosure of the revised bound 3 (D l**log2(3) - 1) / (D l**log2(3)) * n.

    Exact (degenerate interval) whenever l is a power of two; otherwise the
    endpoints come from the certified power enclosure.
    """
    if ell < 7:
        raise EllTooSmall(f"the revised bound is posed for l >= 7, got {ell}")
    d = Fraction(d)
    if d <= 0:
        raise NonpositiveD(f"D must be positive, got {d}")
    x_lo, x_hi = pow_log2_3_interval(ell, bits)
    # 3n (1 - 1/(D x)) is increasing in x
    return 3 * n * (1 - 1 / (d * x_lo)), 3 * n * (1 - 1 / (d * x_hi))


def compare_revised_bound(
    e: int,
    ell: int,
    n: int,
    d: Fraction | int = 1,
    max_refine: int = 48,
) -> bool | None:
    """Decide e <= revised bound; None if undecidable within refinement."""
    bits = 96
    refine = 0
    while True:
        d_frac = Fraction(d)
        if d_frac <= 0:
            raise NonpositiveD(f"D must be positive, got {d_frac}")
        x_lo, x_hi = pow_log2_3_interval(ell, bits, refine)
        lo = 3 * n * (1 - 1 / (d_frac * x_lo))
        hi = 3 * n * (1 - 1 / (d_frac * x_hi))
        if e <= lo:
            return True
        if e > hi:
            return False
        if refine >= max_refine:
            return None
        refine = max(8, refine * 2)
        bits += 32


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

def _fraction_json(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


@dataclass(frozen=True)
class Certificate:
    """Machine-checked record of a strict counterexample to the bound."""

    ell: int
    n: int
    e: int
    bound: Fraction
    margin: Fraction
    method: str
    girth_of_host: int | None
    gadget_caps: tuple[int, ...]
    planarity_ok: bool
    no_cycle_ok: bool
    beats_bound: bool

    @property
    def certified(self) -> bool:
        return self.planarity_ok and self.no_cycle_ok and self.beats_bound

    def to_json_dict(self) -> dict:
        return {
            "ell": self.ell,
            "n": self.n,
            "e": self.e,
            "bound": _fraction_json(self.bound),
            "margin": _fraction_json(self.margin),
            "method": self.method,
            "checks": {
                "planarity_ok": self.planarity_ok,
                "no_cycle_ok": self.no_cycle_ok,
                "beats_bound": self.beats_bound,
                "girth_of_host": self.girth_of_host,
                "gadget_caps": list(self.gadget_caps),
                "failed": None,
            },
            "witness": None,
        }


@dataclass(frozen=True)
class Rejection:
    """Certification failure report: which check failed, with a witness."""

    ell: int
    n: int
    e: int
    bound: Fraction
    margin: Fraction
    method: str
    girth_of_host: int | None
    gadget_caps: tuple[int, ...]
    planarity_ok: bool
    no_cycle_ok: bool
    beats_bound: bool
    failed_check: str
    witness: tuple[int, ...] | None

    @property
    def certified(self) -> bool:
        return False

    def to_json_dict(self) -> dict:
        return {
            "ell": self.ell,
            "n": self.n,
            "e": self.e,
            "bound": _fraction_json(self.bound),
            "margin": _fraction_json(self.margin),
            "method": self.method,
            "checks": {
                "planarity_ok": self.planarity_ok,
                "no_cycle_ok": self.no_cycle_ok,
                "beats_bound": self.beats_bound,
                "girth_of_host": self.girth_of_host,
                "gadget_caps": list(self.gadget_caps),
                "failed": self.failed_check,
            },
            "witness": list(self.witness) if self.witness is not None else None,
        }


def certify(result, ell: int, method: str = "direct", budget: int | None = None,
            jobs: int = 1) -> Certificate | Rejection:
    """Certify a substitution result as a strict counterexample for C_l.

    Checks, in order: planarity (Euler audit of the explicit embedding),
    absence of C_l (direct exhaustive search, or compositionally from host
    girth >= l+1 plus every gadget cycle cap <= l-1), and e > bound in exact
    rationals.  Equality with the bound is a rejection: the certificate
    asserts a strict counterexample.
    """
    from .embedding import euler_audit
    from .substitution import SubstitutionResult

    if method not in ("direct", "compositional"):
        raise ValueError(f"method must be direct or compositional, got {method!r}")
    if not isinstance(result, SubstitutionResult):
        raise TypeError("certify expects a SubstitutionResult")
    graph = result.graph
    n, e = graph.n, graph.edge_count
    bound = conjectured_bound(ell, n)
    margin = Fraction(e) - bound
    caps = tuple(sorted({b.cycle_cap for b in result.gadget_assignment.values()}))

    planarity_ok = euler_audit(graph)
    host_girth: int | None = None
    witness: tuple[int, ...] | None = None
    if method == "direct":
        report = cycles.has_cycle_of_length(graph, ell, budget=budget, jobs=jobs)
        no_cycle_ok = not report.answer
        witness = report.witness
    else:
        host_girth = cycles.girth(result.host_graph, budget=budget).answer
        if result.dense_host is not None:
            assert host_girth == result.dense_host.g
        caps_ok = all(b.cycle_cap <= ell - 1 for b in result.gadget_assignment.values())
        # the compositional argument needs the substitution structure intact:
        # every host edge realized by exactly one merged anchor, so any cycle
        # leaving a copy projects to a host cycle no longer than itself
        structure_ok = (
            len(result.merged) == result.host_graph.edge_count
            and len(result.copy_index) == graph.n
        )
        no_cycle_ok = host_girth >= ell + 1 and caps_ok and structure_ok
    beats_bound = margin > 0

    common = dict(
        ell=ell, n=n, e=e, bound=bound, margin=margin, method=method,
        girth_of_host=host_girth, gadget_caps=caps,
        planarity_ok=planarity_ok, no_cycle_ok=no_cycle_ok, beats_bound=beats_bound,
    )
    if planarity_ok and no_cycle_ok and beats_bound:
        return Certificate(**common)
    if not planarity_ok:
        failed = "planarity"
    elif not no_cycle_ok:
        failed = "no_cycle"
    else:
        failed = "beats_bound"
    return Rejection(failed_check=failed, witness=witness, **common)
