"""Command-line front end: ``albert-e6 {verify,index,witness,psi,embed} --config PATH``.

Reports are JSON with sorted keys and no timing data, so two runs with the
same scenario and seed produce identical bytes.  Exit codes: 0 success,
1 suite failure, 2 config error, 3 undecided regime.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import AlbertError, ConfigParseError, UndecidedRegime
from .config import Scenario, load_scenario, scenario_from_dict, tower_data

VERSION = "0.1.0"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_UNDECIDED = 0, 1, 2, 3
UNDECIDED = "undecided"


def _report(command, sc, **body):
    out = {"command": command, "scenario": sc.to_json(), "version": VERSION}
    out.update(body)
    return out


def _element_json(x):
    return x.to_json() if hasattr(x, "to_json") else str(x)


# verify


def cmd_verify(sc: Scenario):
    from .albert import identity_suite
    from .idealgeom import psi_table_check
    from .octonion import composition_law_check

    A = sc.albert()
    F = A.F
    suites = {}
    if "identities" in sc.suites:
        suites["identities"] = identity_suite(A, samples=sc.samples, seed=sc.seed)
    if "composition" in sc.suites:
        exhaustive = F.is_finite and F.q == 2
        suites["composition"] = composition_law_check(A.C, samples=sc.samples, rng=random.Random(sc.seed),
                                                      exhaustive=exhaustive)
    if "psi" in sc.suites:
        if not F.is_finite:
            raise ConfigParseError("the psi suite needs a finite base field")
        suites["psi"] = psi_table_check(A, random.Random(sc.seed), sc.budget)
    ok = all(s["ok"] for s in suites.values())
    return _report("verify", sc, suites=suites, verdict="pass" if ok else "fail"), ok


# index


def _index_inputs(sc):
    """AlbertData / EtaleData for the scenario, or UndecidedRegime."""
    from .wittforms import AlbertData, EtaleData, TowerField

    if sc.tower is not None:
        return tower_data(sc)
    F = sc.base_field()
    if F.is_finite:
        if F.m != 1 or F.char == 2:
            raise UndecidedRegime("the form engine covers Q and prime fields GF(p), p odd")
        TF = TowerField(F.char, ())
    else:
        TF = TowerField("Q", ())
    C = sc.octonion_algebra()
    c_gens = None if sc.octonion == "split" else tuple(int(x) if F.is_finite else x for x in C.params)
    A = AlbertData.make(TF, c_gens, tuple(int(g) if F.is_finite else g for g in sc.gamma_values()))
    K = sc.etale()
    delta = None if not K.is_field else (int(K.disc) if F.is_finite else K.disc)
    return A, EtaleData.make(TF, delta)


def cmd_index(sc: Scenario):
    from .wittforms import (IndexReport, f3_f5, mt3prime_check, orth_sum, pfister, tensor, tits_index,
                            witt_decompose)

    A, K = _index_inputs(sc)
    undecided = None
    try:
        rep = tits_index(A, K)
    except UndecidedRegime as exc:
        undecided = str(exc)
        f3, f5 = f3_f5(A)
        rep = IndexReport("undecided", None, f3, f5, mt3prime_check(A, K), False, [undecided])
    F = A.field
    fmt_pair = lambda g: [F.fmt_entry(x) for x in g]
    decomps = {
        "f3": rep.f3.to_json(),
        "f5": rep.f5.to_json(),
        "f5_times_K": witt_decompose(tensor(A.f5_form(), K.form())).to_json(),
    }
    if rep.gamma is not None:
        g = pfister(rep.gamma, F)
        decomps["gamma_times_f3_minus_f5"] = witt_decompose(orth_sum(tensor(g, A.f3_form()), A.f5_form().neg())).to_json()
        decomps["gamma_times_K"] = witt_decompose(tensor(g, K.form())).to_json()
    body = {
        "field": F.describe(),
        "label": rep.label,
        "gamma": fmt_pair(rep.gamma) if rep.gamma is not None else None,
        "mt3prime": rep.mt3prime,
        "search_complete": rep.complete,
        "notes": rep.notes,
        "decompositions": decomps,
    }
    if sc.tower is None and sc.base_field().is_finite:
        body["witness"] = _witness_body(sc)
    return _report("index", sc, **body), (UNDECIDED if undecided else True)


# witness


def _witness_body(sc):
    from .hermtriple import HermTriple, isotropy_witness_search, witness_classify

    A, K = sc.albert(), sc.etale()
    T = HermTriple(A, K)
    w = isotropy_witness_search(T, strategies=sc.strategies, budget=sc.budget, seed=sc.seed)
    if w is None:
        return {"found": False, "error": "NotFound", "strategies": list(sc.strategies), "budget": sc.budget}
    data = w.to_json(T)
    cls = witness_classify(T, w.x)
    summary = {"branch": cls["branch"]}
    if cls["branch"] == "trace_zero":
        summary["nilpotent"] = _element_json(cls["nilpotent"])
    else:
        summary["check"] = cls["check"]
    data["found"] = True
    data["classification"] = summary
    return data


def cmd_witness(sc: Scenario):
    body = _witness_body(sc)
    ok = not body["found"] or all(body["verification"].values())
    return _report("witness", sc, witness=body, verdict="found" if body["found"] else "not_found"), ok


# psi


def cmd_psi(sc: Scenario):
    from .idealgeom import psi_table_check

    A = sc.albert()
    if not A.F.is_finite:
        raise ConfigParseError("psi needs a finite base field")
    res = psi_table_check(A, random.Random(sc.seed), sc.budget)
    return _report("psi", sc, rows=res["rows"], verdict="pass" if res["ok"] else "fail"), res["ok"]


# embed


def cmd_embed(sc: Scenario):
    from .hermtriple import embed_kxK, frame_from_embedding

    F, K, C = sc.base_field(), sc.etale(), sc.octonion_algebra()
    r = F.parse(sc.embed.get("r", "1"))
    a, b = (F.parse(x) for x in sc.embed.get("s", ["1", "0"]))
    s = K.add(K.embed(a), K.scale(b, K.theta))
    emb = embed_kxK(C, r, s, K, samples=200, rng=random.Random(sc.seed))
    body = {
        "target_gamma": [F.fmt(g) for g in emb.A.gamma],
        "s": K.fmt(s),
        "images": {k: _element_json(v) for k, v in emb.images.items()},
        "embedding_check": emb.check,
    }
    ok = emb.check["ok"]
    if K.is_field:
        _, rec, _, _ = frame_from_embedding(K, s, C)
        body["frame_check"] = rec
        ok = ok and rec["ok"]
    return _report("embed", sc, verdict="pass" if ok else "fail", **body), ok


COMMANDS = {"verify": cmd_verify, "index": cmd_index, "witness": cmd_witness, "psi": cmd_psi, "embed": cmd_embed}


def build_parser():
    ap = argparse.ArgumentParser(prog="albert-e6", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", help="JSON scenario file (default: built-in split scenario over Q)")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--out", help="write the JSON report here")
    ap.add_argument("--quiet", action="store_true", help="do not print the report")
    return ap


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def run(argv=None):
    """Returns (exit_code, report_or_error_dict)."""
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            sc = load_scenario(args.config, seed=args.seed, budget=args.budget)
        else:
            sc = scenario_from_dict({}, seed=args.seed, budget=args.budget)
        report, ok = COMMANDS[args.command](sc)
        code = EXIT_UNDECIDED if ok == UNDECIDED else EXIT_OK if ok else EXIT_FAIL
    except ConfigParseError as exc:
        return EXIT_CONFIG, {"command": args.command, "error": "ConfigParseError", "message": str(exc)}, args
    except UndecidedRegime as exc:
        return EXIT_UNDECIDED, {"command": args.command, "error": "UndecidedRegime", "message": str(exc)}, args
    except AlbertError as exc:
        return EXIT_FAIL, {"command": args.command, "error": type(exc).__name__, "message": str(exc)}, args
    return code, report, args


def main(argv=None):
    code, report, args = run(argv)
    text = dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if not args.quiet:
        print(text)
    elif "error" in report:
        print(f"{report['error']}: {report['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
