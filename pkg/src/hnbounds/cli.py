"""Command-line harness: run verification suites, emit JSON/CSV reports.

Subcommands:

* ``run <config.json>`` -- execute a named suite from a config file;
* ``polygon --hn <json>`` -- echo slope-data invariants of one type;
* ``epsilon --tower <json>`` -- evaluate the recursive error term;
* ``lattice --gram <json>`` -- invariants and checks of one lattice;
* ``p1z --degree <n>`` -- the integer-polynomial count testbed.

Exit status: 0 when every check passes, 1 on any failed check, 2 on invalid
configuration.  Randomized suites take a seed and print it, so every failure
is replayable; identical config and seed produce byte-identical JSON output.
``HNBOUNDS_JOBS`` controls how many worker processes evaluate checks (the
report list is assembled in a fixed order either way).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import jsonschema

from . import bounds
from .hn import hn_from_json
from .lattices import EuclideanLattice, random_gram
from .scalars import Scalar
from .series import FiberedSeries
from .towers import epsilon, epsilon_tilde, rescale, tower_from_json, AffineFunction
from .bounds import CheckReport, reports_to_csv, reports_to_json

SUITES = ("geometric", "filtered", "lattice", "arithmetic", "epsilon", "polygon")

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["suite"],
    "properties": {
        "suite": {"enum": list(SUITES)},
        "parameters": {"type": "object"},
        "seed": {"type": "integer"},
        "output": {
            "type": "object",
            "properties": {
                "path": {"type": "string"},
                "format": {"enum": ["json", "csv"]},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

PARAMETER_SCHEMAS = {
    "geometric": {
        "type": "object",
        "properties": {
            "a_max": {"type": "integer", "minimum": 1},
            "b_max": {"type": "integer", "minimum": 1},
            "e_max": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
    "filtered": {
        "type": "object",
        "properties": {
            "a_max": {"type": "integer", "minimum": 1},
            "b_max": {"type": "integer", "minimum": 1},
            "e_max": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
    "lattice": {
        "type": "object",
        "properties": {
            "rank": {"type": "integer", "minimum": 1, "maximum": 8},
            "trials": {"type": "integer", "minimum": 1},
        },
        "additionalProperties": False,
    },
    "arithmetic": {
        "type": "object",
        "properties": {
            "max_rank": {"type": "integer", "minimum": 1, "maximum": 6},
            "entries": {"type": "array", "items": {"type": "string"}},
        },
        "additionalProperties": False,
    },
    "epsilon": {
        "type": "object",
        "properties": {
            "trials": {"type": "integer", "minimum": 1},
            "p_max": {"type": "integer", "minimum": 1},
            "depth_max": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
    "polygon": {
        "type": "object",
        "required": ["hn"],
        "properties": {"hn": {"type": "array"}},
        "additionalProperties": False,
    },
}


class ConfigError(ValueError):
    pass


def validate_config(config: dict) -> dict:
    try:
        jsonschema.validate(config, CONFIG_SCHEMA)
        params = config.get("parameters", {})
        jsonschema.validate(params, PARAMETER_SCHEMAS[config["suite"]])
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    return config


def _jobs() -> int:
    try:
        return max(1, int(os.environ.get("HNBOUNDS_JOBS", "1")))
    except ValueError:
        return 1


def _run_checks(tasks):
    """Evaluate (func, arg) pairs, optionally in worker processes.

    Results keep submission order, so the final report list is stable no
    matter how many workers run.
    """
    jobs = _jobs()
    if jobs <= 1 or len(tasks) < 2:
        return [func(arg) for func, arg in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(func, arg) for func, arg in tasks]
        return [f.result() for f in futures]


# -- suites -------------------------------------------------------------------


def _hirzebruch_grid(params):
    a_max = params.get("a_max", 6)
    b_max = params.get("b_max", 6)
    e_max = params.get("e_max", 2)
    for e in range(e_max + 1):
        for a in range(1, a_max + 1):
            for b in range(1, b_max + 1):
                if a >= e * b:
                    yield FiberedSeries(a, b, e)


def suite_geometric(params, rng) -> list[CheckReport]:
    tasks = [(bounds.check_toric_family, F) for F in _hirzebruch_grid(params)]
    return _run_checks(tasks)


def suite_filtered(params, rng) -> list[CheckReport]:
    tasks = [(bounds.check_filtered, F) for F in _hirzebruch_grid(params)]
    return _run_checks(tasks)


def _lattice_checks(gram_json):
    L = EuclideanLattice.from_json(gram_json)
    return [
        bounds.check_minkowski(L),
        bounds.check_blichfeldt(L),
        bounds.h0_minima_bound(L),
    ]


def suite_lattice(params, rng) -> list[CheckReport]:
    rank = params.get("rank", 3)
    trials = params.get("trials", 50)
    grams = [random_gram(rank, rng).to_json() for _ in range(trials)]
    jobs = _jobs()
    if jobs <= 1:
        nested = [_lattice_checks(g) for g in grams]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            nested = list(pool.map(_lattice_checks, grams))
    out = []
    for i, triple in enumerate(nested):
        for rep in triple:
            out.append(
                CheckReport(
                    f"{rep.name} trial={i:04d}",
                    rep.lhs,
                    rep.rhs,
                    rep.margin,
                    rep.passed,
                    rep.context,
                )
            )
    return out


def suite_arithmetic(params, rng) -> list[CheckReport]:
    max_rank = params.get("max_rank", 4)
    entries = [Fraction(e) for e in params.get("entries", ["1/4", "1", "4"])]
    reports = []
    import itertools

    for rank in range(1, max_rank + 1):
        for diag in itertools.product(entries, repeat=rank):
            gram = [
                [diag[i] if i == j else Fraction(0) for j in range(rank)]
                for i in range(rank)
            ]
            reports.append(bounds.check_gillet_soule(EuclideanLattice(gram)))
    return reports


def _random_tower(rng):
    from .towers import Tower, TowerData

    depth = rng.randint(0, 3)
    genera = tuple(rng.randint(0, 4) for _ in range(depth + 1))
    mu = tuple(Scalar.exact(Fraction(rng.randint(0, 12), rng.randint(1, 4))) for _ in range(depth + 1))
    vol = tuple(Scalar.exact(Fraction(rng.randint(0, 24), rng.randint(1, 4))) for _ in range(depth + 1))
    return Tower(genera), TowerData(mu, vol)


def suite_epsilon(params, rng) -> list[CheckReport]:
    from .towers import Tower, TowerData

    trials = params.get("trials", 100)
    p_max = params.get("p_max", 5)
    reports = []
    for i in range(trials):
        tower, data = _random_tower(rng)
        d = tower.depth
        eps = epsilon(tower, data)
        p = rng.randint(1, p_max)
        eps_scaled = epsilon(tower, rescale(data, p))
        bound = Scalar.exact(Fraction(p) ** d) * eps
        reports.append(
            CheckReport.compare(
                f"epsilon-rescale trial={i:04d} p={p} d={d}",
                eps_scaled,
                bound,
                {"epsilon": eps},
            )
        )
        # monotonicity: bump one coordinate upward
        which = rng.randrange(3)
        if which == 0 and d >= 1:
            k = rng.randrange(d)
            mu = list(data.mu)
            mu[k] = mu[k] + Scalar.exact(1)
            bumped = TowerData(tuple(mu), data.vol)
            tower2 = tower
        elif which == 1:
            k = rng.randrange(len(data.vol))
            vol = list(data.vol)
            vol[k] = vol[k] + Scalar.exact(1)
            bumped = TowerData(data.mu, tuple(vol))
            tower2 = tower
        else:
            k = rng.randrange(d + 1)
            genera = list(tower.genera)
            genera[k] += 1
            tower2 = Tower(tuple(genera))
            bumped = data
        reports.append(
            CheckReport.compare(
                f"epsilon-monotone trial={i:04d} coord={which}",
                eps,
                epsilon(tower2, bumped),
                {},
            )
        )
    return reports


def suite_polygon(params, rng) -> list[CheckReport]:
    h = hn_from_json(params["hn"])
    poly = h.polygon()
    deg_plus = h.deg_plus()
    mu_max, mu_min = h.slope_extremes()
    report = CheckReport.compare(
        "polygon deg_plus<=max(rank,1)*mu_max_plus",
        deg_plus,
        Scalar.exact(h.rank) * mu_max.max0(),
        {
            "deg_plus": deg_plus,
            "mu_max": mu_max,
            "mu_min": mu_min,
            "rank": h.rank,
            "breakpoints": [[x.to_json(), y.to_json()] for x, y in poly.breakpoints],
            "integral_identity": h.positive_rank_integral() == deg_plus,
        },
    )
    return [report]


SUITE_RUNNERS = {
    "geometric": suite_geometric,
    "filtered": suite_filtered,
    "lattice": suite_lattice,
    "arithmetic": suite_arithmetic,
    "epsilon": suite_epsilon,
    "polygon": suite_polygon,
}


def run_config(config: dict) -> tuple[int, list[CheckReport]]:
    config = validate_config(config)
    seed = config.get("seed", 0)
    rng = random.Random(seed)
    print(f"suite={config['suite']} seed={seed}")
    reports = SUITE_RUNNERS[config["suite"]](config.get("parameters", {}), rng)
    reports = sorted(reports, key=lambda r: r.name)
    passed = sum(1 for r in reports if r.passed)
    output = config.get("output", {})
    path = output.get("path")
    fmt = output.get("format", "json")
    if path:
        with open(path, "w") as fh:
            if fmt == "csv":
                fh.write(reports_to_csv(reports))
            else:
                json.dump(reports_to_json(reports), fh, indent=2, sort_keys=True)
                fh.write("\n")
    print(f"{passed}/{len(reports)}")
    return (0 if passed == len(reports) else 1), reports


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hnbounds", description="exact slope/lattice inequality verifier"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a suite from a JSON config file")
    p_run.add_argument("config", help="path to config JSON")

    p_poly = sub.add_parser("polygon", help="echo invariants of one slope type")
    p_poly.add_argument("--hn", required=True, help='JSON like [[2,"3"],[1,"-1"]]')

    p_eps = sub.add_parser("epsilon", help="evaluate the recursive error term")
    p_eps.add_argument(
        "--tower", required=True, help='JSON {"genera":[..],"mu":[..],"vol":[..]}'
    )
    p_eps.add_argument("--ell", default=None, help='optional affine "c+s*g" as JSON [c, s]')

    p_lat = sub.add_parser("lattice", help="invariants and checks of one lattice")
    p_lat.add_argument("--gram", required=True, help="JSON matrix of 'p/q' strings")

    p_p1z = sub.add_parser("p1z", help="count unit-norm integer polynomials")
    p_p1z.add_argument("--degree", type=int, required=True)

    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            with open(args.config) as fh:
                config = json.load(fh)
            status, _ = run_config(config)
            return status
        if args.command == "polygon":
            status, reports = run_config(
                {"suite": "polygon", "parameters": {"hn": json.loads(args.hn)}}
            )
            print(json.dumps(reports_to_json(reports), indent=2, sort_keys=True))
            return status
        if args.command == "epsilon":
            tower, data = tower_from_json(json.loads(args.tower))
            if args.ell is None:
                value = epsilon(tower, data)
            else:
                c, s = json.loads(args.ell)
                value = epsilon_tilde(tower, data, AffineFunction(Fraction(str(c)), Fraction(str(s))))
            print(json.dumps({"epsilon": value.to_json()}))
            return 0
        if args.command == "lattice":
            L = EuclideanLattice.from_json(json.loads(args.gram))
            reports = [
                bounds.check_minkowski(L),
                bounds.check_blichfeldt(L),
                bounds.h0_minima_bound(L),
            ]
            print(json.dumps(reports_to_json(reports), indent=2, sort_keys=True))
            return 0 if all(r.passed for r in reports) else 1
        if args.command == "p1z":
            count, report = bounds.p1z_h0(args.degree)
            print(json.dumps({"count": count, "report": report.to_json()}, indent=2, sort_keys=True))
            return 0 if report.passed else 1
    except (ConfigError, json.JSONDecodeError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
