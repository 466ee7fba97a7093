"""Seeded property suites behind ``mttlab verify``.

Each trial draws its own generator from ``(suite, seed, trial)``, so a
trial's instance does not depend on which other trials ran or in what order.
That is what lets ``MTT_THREADS`` fan trials out to worker processes while
the report stays byte-identical.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .checks import (bridge_verdict, build_and_verify_les, euler_additivity_check,
                     find_left_visibility, find_right_visibility)
from .cxcore import shift
from .homcx import format_poly, poincare
from .models import (GeneratorSpec, gen_random, random_chain_map, random_complex,
                     random_triangle, semisimple_oracle)
from .mtt import MTTDatum, interaction_polynomial, transported_probe
from .transport import TransportKernel, certify_exactness

SUITES = ("les", "exactness", "visibility", "bridge", "euler", "oracle", "shift")

# Size caps per suite.  LES and exactness use the larger triangles; the
# random data behind bridge/oracle use the generator defaults.
TRIANGLE_CAPS = dict(max_dim=5, lo=-3, hi=3)
DATUM_SPEC = dict(max_dim=3, lo=-2, hi=2, nodes=2)


@dataclass
class SuiteResult:
    suite: str
    trials: int
    passed: int
    failures: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return self.trials - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {"suite": self.suite, "trials": self.trials, "passed": self.passed,
                "failed": self.failed, "failures": self.failures}


def trial_rng(suite: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{trial}")


def _datum_for(rng: random.Random, datum: MTTDatum | None) -> MTTDatum:
    if datum is not None:
        return datum
    return gen_random(GeneratorSpec(seed=rng.getrandbits(63), **DATUM_SPEC))


# Each trial returns None on success or a short failure string.

def _trial_les(rng, datum):
    D = _datum_for(rng, datum)
    i, j = rng.randint(1, D.r), rng.randint(1, D.r)
    T = random_triangle(rng, sector=D.sector(i), **TRIANGLE_CAPS)
    rec = build_and_verify_les(D, i, j, T, D.probe(j))
    if rec.ok:
        return None
    bad = rec.first_inexact()
    if bad is None:
        return f"channel {(i, j)}: exactness certificate failed ({rec.certificate.reason})"
    return f"channel {(i, j)}: not exact at H^{bad[0]} of {bad[1]}"


def _trial_exactness(rng, datum):
    if datum is not None:
        D = datum
        i = rng.randint(1, D.r)
        K = D.phi[i - 1]
        src = D.sector(i)
    else:
        K = TransportKernel(random_complex(rng, 2, -1, 1), "K", "a", "b")
        src = "a"
    X1 = random_complex(rng, TRIANGLE_CAPS["max_dim"], TRIANGLE_CAPS["lo"],
                        TRIANGLE_CAPS["hi"], sector=src)
    X = random_complex(rng, TRIANGLE_CAPS["max_dim"], TRIANGLE_CAPS["lo"],
                       TRIANGLE_CAPS["hi"], sector=src)
    f = random_chain_map(rng, X1, X)
    cert = certify_exactness(K, f)
    return None if cert.ok else f"certificate failed: {cert.reason}"


def _visibility_pair(rng, datum):
    if datum is not None:
        i, j = rng.randint(1, datum.r), rng.randint(1, datum.r)
        return transported_probe(datum, i, j), datum.probe(j)
    return random_complex(rng, 3, -2, 2), random_complex(rng, 3, -2, 2)


def _trial_visibility(rng, datum):
    X, L = _visibility_pair(rng, datum)
    P = poincare(X, L)
    w = find_right_visibility(X, L)
    if w is not None and P.is_zero():
        return "right witness returned but P = 0"
    if P.coeff(0) and w is None:
        return f"P = {format_poly(P)} has a q^0 term but no right witness was found"
    if w is not None and not any(w.class_coords):
        return "right witness has zero homotopy class"
    v = find_left_visibility(L, X)
    if v is not None and poincare(L, X).is_zero():
        return "left witness returned but RHom(L, X) = 0"
    return None


def _trial_bridge(rng, datum):
    D = _datum_for(rng, datum)
    bad = [rep.channel for rep in bridge_verdict(D) if not rep.bridge_consistent]
    return f"inconsistent channels {bad}" if bad else None


def _trial_euler(rng, datum):
    D = _datum_for(rng, datum)
    i, j = rng.randint(1, D.r), rng.randint(1, D.r)
    T = random_triangle(rng, sector=D.sector(i), **TRIANGLE_CAPS)
    return None if euler_additivity_check(D, i, j, T, D.probe(j)) else \
        f"channel {(i, j)}: Euler characteristics not additive"


def _trial_oracle(rng, datum):
    D = _datum_for(rng, datum)
    for i, j in D.channels():
        a, b = interaction_polynomial(D, i, j), semisimple_oracle(D, i, j)
        if a != b:
            return f"channel {(i, j)}: pipeline {format_poly(a)} != oracle {format_poly(b)}"
    return None


def _trial_shift(rng, datum):
    X, Y = _visibility_pair(rng, datum)
    base = poincare(X, Y)
    for k in range(-2, 3):
        if poincare(shift(X, k), Y) != base.shift(k):
            return f"shift by {k} breaks the identity"
    return None


_TRIALS = {
    "les": _trial_les,
    "exactness": _trial_exactness,
    "visibility": _trial_visibility,
    "bridge": _trial_bridge,
    "euler": _trial_euler,
    "oracle": _trial_oracle,
    "shift": _trial_shift,
}


def _run_one(args):
    suite, seed, t, datum = args
    try:
        return _TRIALS[suite](trial_rng(suite, seed, t), datum)
    except Exception as e:  # a crash is a failed trial, reported, not fatal
        return f"{type(e).__name__}: {e}"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MTT_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str, seed: int, trials: int, datum: MTTDatum | None = None,
              workers: int | None = None) -> SuiteResult:
    if suite not in _TRIALS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    workers = workers or worker_count()
    jobs = [(suite, seed, t, datum) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outcomes = list(ex.map(_run_one, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [_run_one(j) for j in jobs]
    failures = [{"trial": t, "reason": msg} for t, msg in enumerate(outcomes) if msg]
    return SuiteResult(suite, trials, trials - len(failures), failures)


def run_suites(names, seed: int, trials: int, datum: MTTDatum | None = None,
               workers: int | None = None) -> list[SuiteResult]:
    if "all" in names:
        names = SUITES
    return [run_suite(n, seed, trials, datum, workers) for n in names]
