"""Property suites behind ``consheaf verify`` and the acceptance tests.

Every check is a pure function of ``(samples, seed, ...)`` returning a
``CheckResult``; suites group checks and run them in order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import calculus, circle, microsupport, orbit, tamarkin, zigzag
from .errors import BoundaryPoint
from .germ import compose, kernels, poset
from .intervals import INF, NINF, GradedBarcode, Interval
from .linalg import GF2, GF3, make_field
from .quiver import cokernel_rep, image_rep, kernel_rep, random_morphism

# ---------------------------------------------------------------- results


@dataclass
class CheckResult:
    name: str
    anchor: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self):
        return {
            "check": self.name,
            "anchor": self.anchor,
            "passed": self.passed,
            "detail": self.detail,
        }


def _run(name, anchor, fn, *args, **kw):
    t0 = time.perf_counter()
    try:
        ok, detail = fn(*args, **kw)
    except Exception as exc:  # a crash is a failed check, with the reason
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, anchor, bool(ok), detail, time.perf_counter() - t0)


def _rng(seed):
    return np.random.default_rng(seed)


def _q(rng, lo, hi, den):
    """Random rational in ``[lo, hi]`` with denominator ``den``."""
    return Fraction(int(rng.integers(lo * den, hi * den + 1)), den)


# ---------------------------------------------------------------- A1


def gabriel_roundtrip(samples=500, seed=0):
    rng = _rng(seed)
    for k in range(samples):
        field = GF2 if k % 2 == 0 else GF3
        rep = zigzag.random_zigzag(field, rng, max_total=40)
        bc = zigzag.gabriel_decompose(rep)
        back = zigzag.realize_rep(bc, rep.points)
        if back.dims != rep.dims:
            return False, f"sample {k}: dimension vector changed"
        if zigzag.rank_invariant(back) != zigzag.rank_invariant(rep):
            return False, f"sample {k}: composite-word ranks changed"
    return True, f"{samples} representations"


# ---------------------------------------------------------------- A2


def hom_table(samples=200, seed=0):
    rng = _rng(seed)
    for k in range(samples):
        I, J = calculus.random_interval(rng), calculus.random_interval(rng)
        h, e = calculus.oracle_hom_ext(I, J, GF3)
        if calculus.hom_dim(I, J) != h or calculus.ext1_dim(I, J) != e:
            return False, f"{I} vs {J}: closed form ({calculus.hom_dim(I, J)}, {calculus.ext1_dim(I, J)}) oracle ({h}, {e})"
    for k in range(max(1, samples // 4)):
        F = calculus.random_barcode(rng, GF2, degrees=(-1, 0, 1))
        G = calculus.random_barcode(rng, GF2, degrees=(-1, 0, 1))
        if calculus.hom_complex(F, G) != calculus.oracle_hom_complex(F, G):
            return False, f"hom_complex mismatch on sample {k}"
    return True, f"{samples} interval pairs, {max(1, samples // 4)} barcode pairs"


# ---------------------------------------------------------------- A3


def random_tau_interval(rng, grid=8, den=4):
    while True:
        a, b = sorted(_q(rng, 0, grid, den) for _ in range(2))
        left = NINF if rng.random() < 0.1 else a
        right = INF if rng.random() < 0.1 else b
        I = Interval.make(left, left != NINF, right, False)
        if I is not None:
            return I


def random_tau_barcode(rng, field=GF2, max_bars=4, bounded_below=False, degrees=(0,)):
    bars = []
    for _ in range(int(rng.integers(0, max_bars + 1))):
        I = random_tau_interval(rng)
        if bounded_below and not I.bounded_below:
            I = Interval(0, True, I.b, False)
        bars.append((I, int(rng.choice(degrees)), int(rng.integers(1, 3))))
    return GradedBarcode(bars, field)


def energy_laws(samples=50, seed=0):
    rng = _rng(seed)
    for _ in range(samples):
        a, b = sorted(_q(rng, -10, 10, 7) for _ in range(2))
        if a == b:
            b += 1
        I = Interval(a, True, b, False)
        e = tamarkin.displacement_energy(GradedBarcode([(I, 0)], 2))
        if e.value != b - a:
            return False, f"e({I}) = {e} != {b - a}"
        # independent view: tau_c is the canonical map I -> I + c, nonzero iff Hom(k_I, k_{I+c}) != 0
        eps = Fraction(1, 1000)
        if calculus.hom_dim(I, I.translate(b - a - eps)) != 1 or calculus.hom_dim(I, I.translate(b - a)) != 0:
            return False, f"Hom(k_I, k_(I+c)) does not switch off at c = {b - a}"
    fs = tamarkin.flying_saucer_barcode()
    if tamarkin.displacement_energy(fs).value != tamarkin.Q_HALF_PI:
        return False, "flying-saucer energy differs from Q"
    for k in range(2 * samples):
        F, G = random_tau_barcode(rng), random_tau_barcode(rng)
        eF, eG = tamarkin.displacement_energy(F), tamarkin.displacement_energy(G)
        eFG = tamarkin.displacement_energy(F + G)
        if eFG.value != max(eF.value, eG.value):
            return False, f"sample {k}: e(F+G) != max"
        c = _q(rng, -5, 5, 3)
        if tamarkin.displacement_energy(F.translate(c)).value != eF.value:
            return False, f"sample {k}: energy not translation invariant"
    return True, f"{samples} bars, flying saucer, {2 * samples} sums and translates"


# ---------------------------------------------------------------- A4


def projector_laws(samples=100, seed=0):
    rng = _rng(seed)
    H = tamarkin.HALF_LINE
    for k in range(samples):
        F = calculus.random_barcode(rng, GF2, allow_infinite=False)
        P = tamarkin.convolve(F, H)
        if tamarkin.convolve(P, H) != P:
            return False, f"sample {k}: projector not idempotent"
        if (P == F) != tamarkin.is_tau_nonneg(F):
            return False, f"sample {k}: fixed by the projector iff tau>=0 fails for {F.to_json()}"
        T = random_tau_barcode(rng, bounded_below=True)
        u = _q(rng, 1, 6, 3)
        if tamarkin.convolve(T, Interval(0, False, u, True)):
            return False, f"sample {k}: convolution with (0,u] is nonzero"
        S = random_tau_barcode(rng, bounded_below=True)
        if not tamarkin.slice_triangle_check(S, _q(rng, 1, 6, 3)):
            return False, f"sample {k}: slice sequence not exact"
    return True, f"{samples} cases each"


# ---------------------------------------------------------------- A5 / A6


def geodesic_germs(samples=100, seed=0):
    rng = _rng(seed)
    done = tried = 0
    while done < samples:
        tried += 1
        s, t = _q(rng, 0, 3, 8), _q(rng, 0, 3, 8)
        if s == 0 or t == 0:
            continue
        x, z = [_q(rng, -5, 5, 8)], [_q(rng, -5, 5, 8)]
        exp = kernels.geodesic_expected(s, t, x, z)
        if exp is None:
            continue
        got = compose.compose_germ(kernels.ball_kernel(s), kernels.ball_kernel(t), x, z)
        if got != exp:
            return False, f"s={s} t={t} x={x[0]} z={z[0]}: {got} vs {exp}"
        # with the [1] normalization the composition is the kernel of time s+t
        K = compose.compose_germ(kernels.ball_kernel(s, shift=1), kernels.ball_kernel(t, shift=1), x, z)
        if K != kernels.ball_kernel(s + t, shift=1).stalk(x + z):
            return False, f"K_s o K_t != K_(s+t) at x={x[0]} z={z[0]}"
        done += 1
    return True, f"{samples} off-threshold samples"


def geodesic_triangle(box=4):
    Z = compose.IndicatorComplex.of(kernels.geodesic_Z())
    U = compose.IndicatorComplex.of(kernels.geodesic_U())
    h = poset.hom_global_poset(Z, U, box)
    if h != {2: 1}:
        return False, f"Hom(k_Z, k_U[k]) = {h.dims}"
    if calculus.extension_class_count(1, 2) != 2:
        return False, "extension classes over GF(2) with Ext of dimension 1 should be 2"
    return True, "Hom(k_Z, k_U[2]) = 1, zero in other degrees; 2 extension classes"


def composition_associativity(samples=20, seed=0):
    """Triple composition of shifted open balls against both bracketings."""
    rng = _rng(seed)
    done = 0
    while done < samples:
        r = [_q(rng, 1, 3, 4) for _ in range(3)]
        x, z = [_q(rng, -6, 6, 8)], [_q(rng, -6, 6, 8)]
        if abs(z[0] - x[0]) == sum(r):
            continue
        K = [kernels.ball_kernel(ri, shift=1) for ri in r]
        triple = compose.compose_chain(K, x, z)
        ab = compose.compose_germ(kernels.ball_kernel(r[0] + r[1], shift=1), K[2], x, z)
        bc = compose.compose_germ(K[0], kernels.ball_kernel(r[1] + r[2], shift=1), x, z)
        if not (triple == ab == bc):
            return False, f"radii {[str(v) for v in r]}: {triple} / {ab} / {bc}"
        done += 1
    return True, f"{samples} triples"


# ---------------------------------------------------------------- A7


SQUARE_STRATA = {2: [("C", 1), ("W", 2)], 3: [("C", 1), ("C", 2), ("W", 3)]}


def square_kernel(samples=40, seed=0):
    rng = _rng(seed)
    counts = {}
    for m, strata in SQUARE_STRATA.items():
        for kind, i in strata + [("out", 1)]:
            got_n = 0
            while got_n < samples:
                p = kernels.sample_square_point(kind, i, rng)
                try:
                    exp = kernels.square_expected(m, p)
                except BoundaryPoint:
                    continue
                st = kernels.square_stratum(m, p)
                if kind != "out" and st != (kind, i):
                    continue
                got = kernels.square_kernel_stalk(m, p, check_boundary=False)
                if got != exp:
                    return False, f"K_{m} at {[str(v) for v in p]}: {got} vs {exp}"
                got_n += 1
            counts[f"m={m}:{kind}{'' if kind == 'out' else i}"] = got_n
    # unit: K_1 = k_W
    W = kernels.square_W()
    for _ in range(samples):
        p = [_q(rng, -2, 2, 7) for _ in range(4)]
        if kernels.square_kernel_stalk(1, p, check_boundary=False) != ({0: 1} if W.contains(p) else {}):
            return False, f"K_1 stalk at {p} disagrees with W"
    return True, ", ".join(f"{k}: {v}" for k, v in counts.items())


def kinf_lines(samples=50, seed=0, window=16):
    rng = _rng(seed)
    for k in range(samples):
        x1, y1 = _q(rng, -1, 1, 13), _q(rng, -1, 1, 13)
        x2 = _q(rng, -4, 4, 5)
        bc = kernels.kinf_line_barcode(x1, x2, y1, window)
        if any(I.length > 4 for I, _, _ in bc):
            return False, f"line {k}: a bar longer than 4"
        e = tamarkin.displacement_energy(bc)
        if e.value > 4:
            return False, f"line {k}: energy {e} > 4"
    return True, f"{samples} vertical lines"


# ---------------------------------------------------------------- A8


def circle_roundtrip(samples=200, seed=0):
    rng = _rng(seed)
    for k in range(samples):
        field = GF2 if k % 2 == 0 else GF3
        C = [Fraction(1), Fraction(3, 2), Fraction(2)][k % 3]
        rep = circle.random_cyclic_rep(field, rng, C=C)
        if not circle.roundtrip_check(rep):
            return False, f"sample {k}: roundtrip failed"
    return True, f"{samples} cyclic representations"


def circle_endomorphisms(samples=60, seed=0):
    rng = _rng(seed)
    for k in range(samples):
        C = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
        a = _q(rng, 0, 2, 4)
        length = _q(rng, 0, 4, 4)
        ac, bc = bool(rng.integers(2)), bool(rng.integers(2))
        if length == 0:
            ac = bc = True
        I = Interval.make(a, ac, a + length, bc)
        if I is None:
            continue
        closed_form = circle.endo_algebra(I, C)
        if closed_form != circle.endo_algebra_oracle(I, C, 2):
            return False, f"End of {I} on a circle of length {C}: {closed_form}"
        dim, nil, semi = closed_form
        if (I.a_closed == I.b_closed) and (dim, semi) != (1, True):
            return False, f"{I}: closed/open bar should have End = k"
        if I.a_closed != I.b_closed and dim != nil:
            return False, f"{I}: nilpotency index should equal the dimension"
    for r in (1, 2, 3):
        if not circle.factorization_check(r, Interval(0, True, Fraction(5, 2), False), 1):
            return False, f"factorization through L_{r} fails"
    return True, f"{samples} bars"


# ---------------------------------------------------------------- A9


def orbit_category(samples=200, seed=0):
    rng = _rng(seed)
    for k in range(samples):
        F = calculus.random_barcode(rng, GF2, degrees=(-2, 0, 1, 3))
        G = calculus.random_barcode(rng, GF2, degrees=(-1, 0, 2))
        if orbit.orbit_hom_dim(F, G) != calculus.oracle_hom_complex(F, G).total:
            return False, f"sample {k}: orbit Hom differs from the sum over shifts"
        if not orbit.stabilization_bound_check(F, G):
            return False, f"sample {k}: Hom in the dual-numbers model not stable past b-a+2"
    for i in range(11):
        if orbit.dualnumbers_ext(i) != 1:
            return False, f"Ext^{i}_K(k,k) != 1"
    for p in range(-3, 4):
        for q in range(p, 4):
            if not orbit.lpq_triangle_check(p, q):
                return False, f"L^({p},{q}) triangle fails"
    for _ in range(20):
        V = {int(d): int(rng.integers(0, 3)) for d in rng.integers(-3, 4, size=2)}
        W = {int(d): int(rng.integers(0, 3)) for d in rng.integers(-3, 4, size=2)}
        a, b = orbit.point_orbit_hom_two_ways(V, W)
        if a != b:
            return False, f"point model: {a} vs {b}"
    return True, f"{samples} pairs, Ext^i for i<=10, L^(p,q) for -3<=p<=q<=3"


# ---------------------------------------------------------------- A10


def _rays_of(bc):
    return microsupport.ss(bc).rays


def microsupport_coherence(samples=200, seed=0):
    rng = _rng(seed)
    for k in range(samples):
        F = calculus.random_barcode(rng, GF3, degrees=(0, 1))
        rays = _rays_of(F)
        probes = {microsupport.CovectorPoint(x, s) for x in list(F.endpoints()) + [Fraction(-1, 2), Fraction(9, 2)] for s in (1, -1)}
        for p in probes:
            if (microsupport.microgerm(F, p).is_zero()) == (p in rays):
                return False, f"sample {k}: germ at {p} disagrees with SS"
        if _rays_of(calculus.dual_prime(F)) != frozenset(r.antipode() for r in rays):
            return False, f"sample {k}: SS of the dual is not the antipode"
    for k in range(samples):
        field = GF2 if k % 2 == 0 else GF3
        pts = sorted({Fraction(int(x)) for x in rng.choice(8, size=int(rng.integers(1, 4)), replace=False)})
        M = zigzag.random_zigzag(field, rng, points=pts, max_total=12, max_dim=3)
        N = zigzag.random_zigzag(field, rng, points=pts, max_total=12, max_dim=3)
        f = random_morphism(M, N, rng)
        parts = {
            "ker": kernel_rep(M, f),
            "src": M,
            "img": image_rep(N, f),
            "tgt": N,
            "cok": cokernel_rep(N, f),
        }
        ss = {name: _rays_of(zigzag.gabriel_decompose(zigzag.ZigzagRep.from_quiver(R, pts))) for name, R in parts.items()}
        for a, b, c in (("ker", "src", "img"), ("img", "tgt", "cok")):
            for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
                if not ss[x] <= ss[y] | ss[z]:
                    return False, f"sample {k}: SS({x}) not inside SS({y}) u SS({z})"
    return True, f"{samples} barcodes, {samples} morphisms (two short exact sequences each)"


# ---------------------------------------------------------------- suites

SUITES = {
    "gabriel": [("A1 gabriel roundtrip", "decomposition into interval summands", gabriel_roundtrip, 500)],
    "hom": [("A2 hom table", "Hom between intervals: closed in one, open in the other", hom_table, 200)],
    "energy": [("A3 displacement energy", "energy of a single bar is its length", energy_laws, 50)],
    "projector": [("A4 projector laws", "half-line convolution projects onto tau>=0", projector_laws, 100)],
    "geodesic": [
        ("A5 geodesic germs", "composition of ball kernels is k[-n] inside the sum of radii", geodesic_germs, 100),
        ("A6 non-split triangle", "Hom(k_Z, k_U[n+1]) is one-dimensional", lambda samples, seed: geodesic_triangle(), 1),
        ("associativity", "composition of kernels is associative", composition_associativity, 20),
    ],
    "square": [
        ("A7 square kernel stalks", "H^i K_n is the constant sheaf on C_(i+1), top degree on W_n", square_kernel, 40),
        ("A7 K_inf lines", "tau_c(K_inf) vanishes for c >= 4", kinf_lines, 50),
    ],
    "circle": [
        ("A8 circle roundtrip", "circle sheaves split into bars and a local system", circle_roundtrip, 200),
        ("A8 endomorphisms", "End of a half-closed bar is nilpotent of order |E(a)|", circle_endomorphisms, 60),
    ],
    "orbit": [("A9 orbit category", "orbit Hom is the sum over all shifts", orbit_category, 200)],
    "microsupport": [("A10 microsupport", "SS is closed under duality (antipode) and triangles", microsupport_coherence, 200)],
}


def run_suite(name, samples=None, seed=0):
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        for check, anchor, fn, default in SUITES[n]:
            out.append(_run(check, anchor, fn, samples=samples or default, seed=seed))
    return out
