"""Built-in consistency battery behind the `selftest` subcommand.

Exercises the pinned worked examples, the dense-oracle agreement, the Heine
identity, and the factorization shortcuts (including the guard that the
corrected coefficient-level split is the one consistent with brute force).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .coefficients import expand, factorize_g, g_coefficient
from .delta_engine import DeltaSpec, evaluate, materialize, try_factorize
from .hyperdet import DenseTensor, det_direct, laplace_expand
from .oracle import (
    DiscreteMeasure,
    FunctionTable,
    heine_lhs,
    heine_rhs,
    schur_expansion_bruteforce,
)


def _checks():
    ex1 = DeltaSpec(((2, 1, 1), (1, 0, 0), (1, 0, 0), (0, 0, 0)))
    yield "worked example, order 4 dim 3", lambda: evaluate(ex1) == 6
    yield "worked example, dense agreement", lambda: det_direct(materialize(ex1)) == 6
    ex2 = DeltaSpec(((4, 1, 1), (0, 0, 0), (0, 0, 0), (0, 0, 0)))
    yield "worked example, order 4 dim 3 (second)", lambda: evaluate(ex2) == 3
    ex2c = DeltaSpec(((2, -1), (1, 0), (0, 0), (0, 0)))
    yield "worked example, negative entries", lambda: evaluate(ex2c) == -1

    def laplace_agreement():
        rng = random.Random(411)
        for _ in range(5):
            dim = rng.choice((2, 3))
            t = DenseTensor.from_function(
                4, dim, lambda _: rng.randint(-3, 3)
            )
            if laplace_expand(t, (1,)) != det_direct(t):
                return False
        return True

    yield "laplace expansion equals direct sum", laplace_agreement

    def heine_agreement():
        mu = DiscreteMeasure(
            support=(Fraction(1), Fraction(-1, 2), Fraction(3)),
            weights=(Fraction(1, 3), Fraction(2), Fraction(-1, 4)),
        )
        table = FunctionTable.monomials(
            ((0, 1, 2), (1, 2, 3), (0, 2, 4), (0, 1, 3)), mu
        )
        for n in (1, 2, 3):
            if heine_lhs(mu, table, n) != heine_rhs(mu, table, n):
                return False
        return True

    yield "determinant-integral identity over a discrete measure", heine_agreement

    def tensor_factorization():
        spec = DeltaSpec(((7, 7, 4, 2, 0),) + ((0,) * 5,) * 3)
        split = try_factorize(spec)
        if split is None:
            return False
        left, right, sign = split
        return sign * evaluate(left) * evaluate(right) == evaluate(
            spec, factorize=False
        )

    yield "block factorization matches unfactorized value", tensor_factorization

    def coefficient_factorization():
        lam, n, k = (7, 7, 4, 2, 0), 5, 1
        split = factorize_g(lam, n, k)
        if split is None:
            return False
        mu_, nu, m, rest = split
        good = g_coefficient(mu_, m, k) * g_coefficient(nu, rest, k)
        if good != g_coefficient(lam, n, k):
            return False
        # the uncorrected head offset 2k(m-1) must be detectably wrong
        bad_mu = tuple(x - 2 * k * (m - 1) for x in lam[:m])
        bad = g_coefficient(bad_mu, m, k) * g_coefficient(nu, rest, k)
        return bad != g_coefficient(lam, n, k)

    yield "coefficient factorization uses the corrected offset", coefficient_factorization

    def oracle_equivalence():
        for n, k in ((2, 1), (3, 1), (4, 1), (2, 2), (3, 2)):
            if expand(n, k).terms != schur_expansion_bruteforce(n, k).terms:
                return False
        return True

    yield "engine matches brute-force expansion", oracle_equivalence


def run() -> int:
    failures = 0
    for name, check in _checks():
        try:
            ok = check()
        except Exception as exc:  # noqa: BLE001 - report, do not crash the battery
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1
    return 0 if failures == 0 else 2
