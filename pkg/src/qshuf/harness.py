"""Multi-seed verification harnesses behind the CLI.

Dimensions are recomputed for every seed (independent parameter draws, and a
rotating modular prime on the large kernels); a run's value is accepted only
when all seeds agree.  Jobs parallelize over (dimension vector, seed) pairs;
results are keyed, so scheduling cannot change any report byte.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from multiprocessing import get_context

from .fields import ExactRationalField, SpecializedField
from .kac import hua_kac_table, kac_exp_series
from .quiver import Quiver
from .report import key_str
from .slopes import DEFAULT_CEILING, ResourceCeiling, SlopeVector, slope_dim


def _dim_task(args):
    (vertices, edges), m_str, n, seed, exact, ceiling, prime_index = args
    quiver = Quiver(vertices, tuple(tuple(e) for e in edges))
    m = tuple(Fraction(x) for x in m_str)
    if exact:
        field = ExactRationalField(quiver)
    else:
        field = SpecializedField(quiver, seed)
    try:
        d, method = slope_dim(quiver, field, m, tuple(n), ceiling=ceiling, prime_index=prime_index)
        return (tuple(n), seed, d, method, None)
    except ResourceCeiling as exc:
        return (tuple(n), seed, None, "capped", str(exc))


def _run_tasks(tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [_dim_task(t) for t in tasks]
    with get_context("fork").Pool(jobs) as pool:
        return pool.map(_dim_task, tasks, chunksize=1)


def _box(n_max: tuple[int, ...]):
    return list(itertools.product(*(range(x + 1) for x in n_max)))


def dims_report(
    quiver: Quiver,
    m: SlopeVector,
    n_max: tuple[int, ...],
    seed: int,
    trials: int,
    jobs: int = 1,
    exact: bool = False,
    ceiling: int = DEFAULT_CEILING,
) -> dict:
    seeds = [seed] if exact else [seed + i for i in range(trials)]
    qdata = (quiver.vertex_count, [list(e) for e in quiver.edges])
    m_str = [str(x) for x in m]
    tasks = [
        (qdata, m_str, list(n), s, exact, ceiling, idx)
        for n in _box(n_max)
        for idx, s in enumerate(seeds)
    ]
    results = _run_tasks(tasks, jobs)
    per_seed: dict[str, list] = {}
    methods: dict[str, str] = {}
    caps: dict[str, str] = {}
    for n, s, d, method, err in sorted(results):
        k = key_str(n)
        per_seed.setdefault(k, []).append(d)
        methods[k] = method
        if err:
            caps[k] = err
    dims = {}
    agreement = True
    for k, vals in per_seed.items():
        if any(v is None for v in vals):
            dims[k] = None
        elif len(set(vals)) == 1:
            dims[k] = vals[0]
        else:
            dims[k] = None
            agreement = False
    report = {
        "command": "dims",
        "quiver": {"vertices": quiver.vertex_count, "edges": [list(e) for e in quiver.edges]},
        "slope": m_str,
        "upto": list(n_max),
        "mode": "exact" if exact else "specialized",
        "seeds": [] if exact else seeds,
        "dims": dims,
        "per_seed": per_seed,
        "methods": methods,
        "capped": caps,
        "agreement": agreement,
    }
    return report


def conjecture_report(
    quiver: Quiver,
    n_max: tuple[int, ...],
    seed: int,
    trials: int,
    jobs: int = 1,
    ceiling: int = DEFAULT_CEILING,
) -> dict:
    m0 = tuple(Fraction(0) for _ in range(quiver.vertex_count))
    dims = dims_report(quiver, m0, n_max, seed, trials, jobs, False, ceiling)
    rhs = kac_exp_series(quiver, n_max)
    kac_values = {
        key_str(n): kp.at_one() for n, kp in hua_kac_table(quiver, n_max).items()
    }
    rows = []
    all_equal = True
    for n in _box(n_max):
        k = key_str(n)
        lhs = dims["dims"].get(k)
        want = rhs.coeff(n)
        capped = k in dims["capped"]
        equal = (lhs == want) if (lhs is not None and not capped) else None
        if equal is False:
            all_equal = False
        rows.append(
            {
                "n": list(n),
                "lhs": lhs,
                "rhs": want,
                "equal": equal,
                "per_seed": dims["per_seed"][k],
                "capped": capped,
            }
        )
    return {
        "command": "check-conjecture",
        "quiver": dims["quiver"],
        "upto": list(n_max),
        "seeds": dims["seeds"],
        "kac_at_one": kac_values,
        "rows": rows,
        "capped": dims["capped"],
        "agreement": dims["agreement"],
        "all_equal": all_equal and dims["agreement"],
    }
