"""``qbell`` command-line front end.

State-consuming commands read the state-file JSON from ``FILE`` or, when it
is omitted or ``-``, from standard input, so model generators pipe straight
into analyses::

    qbell model wen --sites 4 --index 0 | qbell bound --pivot 4

Exit codes: 0 success, 1 failed reproduction checks, 2 usage error, 3
validation or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

from qbell import bell, entanglement, pauli, states, tee
from qbell.errors import QbellError
from qbell.models import cylinder, ghz2n, wen_plaquette, xy

SEED_ENV = "QBELL_SEED"
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID = 3


class UsageError(Exception):
    pass


def _num(x):
    """Round floats to 12 significant digits for reports."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return float(f"{x:.12g}") + 0.0 if math.isfinite(x) else str(x)
    if isinstance(x, complex):
        return [_num(x.real), _num(x.imag)]
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if hasattr(x, "tolist"):
        return _num(x.tolist())
    return x


def _flatten(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and value and any(isinstance(v, (list, dict)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    elif isinstance(value, list):
        out.append((prefix, " ".join(str(v) for v in value)))
    else:
        out.append((prefix, value))


def emit_report(command: str, inputs: dict, results: dict, fmt: str, quantity: dict | None = None) -> str:
    report = {
        "command": command,
        "inputs": _num(inputs),
        "results": _num(results),
        "provenance": quantity or {},
    }
    if fmt == "csv":
        rows: list = []
        _flatten("", {"inputs": report["inputs"], "results": report["results"]}, rows)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps(report, sort_keys=True) + "\n"


def _read_state(path: str | None) -> states.State:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read state file {path!r}: {exc.strerror}") from exc
    return states.loads_state(text)


def _int_list(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"{what} must be comma-separated site numbers, got {text!r}") from exc


def _require_pure(state) -> states.PureState:
    if not isinstance(state, states.PureState):
        raise QbellError("this command needs a pure state (kind 'pure')")
    return state


# --- commands -------------------------------------------------------------


def cmd_state_info(a) -> str:
    s = _read_state(a.file)
    results = {
        "n": s.n_sites,
        "kind": "pure" if isinstance(s, states.PureState) else "density",
        "purity": states.purity(s),
        "von_neumann_entropy": states.von_neumann_entropy(s),
    }
    if isinstance(s, states.PureState):
        results["renormalized_by"] = s.renormalized_by
        results["single_site_entropies"] = [
            states.entanglement_entropy(s, [k]) for k in range(1, s.n_sites + 1)
        ] if s.n_sites > 1 else []
    return emit_report("state info", {"file": a.file or "-"}, results, a.format)


def cmd_rmatrix(a) -> str:
    s = _read_state(a.file)
    r = pauli.generalized_r_matrix(s, a.pivot, _int_list(a.order, "--order"))
    if a.format == "csv":
        return r.to_csv()
    results = {
        "pivot": r.pivot,
        "site_order": list(r.site_order),
        "rows": [r.row_label(i) for i in range(r.entries.shape[0])],
        "entries": r.entries,
    }
    return emit_report("rmatrix", {"pivot": a.pivot, "order": a.order}, results, "json")


def cmd_bound(a) -> str:
    s = _read_state(a.file)
    rep = bell.bell_bound(s, a.pivot, _int_list(a.order, "--order"))
    return emit_report(
        "bound",
        {"pivot": a.pivot, "order": a.order},
        rep.as_dict(),
        a.format,
        {"gamma_bound": "2 sqrt(u1^2 + u2^2) from the top two eigenvalues of R^T R"},
    )


def _seed(a) -> int:
    if a.seed is not None:
        return a.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env, 0)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


def cmd_optimize(a) -> str:
    s = _read_state(a.file)
    cfg = bell.OptimizerConfig(
        restarts=a.restarts, max_iterations=a.max_iter, tolerance=a.tol, seed=_seed(a)
    )
    opt = bell.maximize_bell(s, a.form, cfg, a.pivot, _int_list(a.order, "--order"))
    inputs = {"form": a.form, "restarts": cfg.restarts, "seed": cfg.seed, "pivot": a.pivot, "order": a.order}
    quantity = {
        "gamma_star": "best Bell expectation over unit measurement directions",
        "bound": "eigenvalue bound (reduced form) or 2^((n+1)/2) (full form)",
    }
    return emit_report("optimize", inputs, opt.as_dict(), a.format, quantity)


def cmd_concurrence(a) -> str:
    s = _require_pure(_read_state(a.file))
    cut = _int_list(a.cut, "--cut")
    c = entanglement.generalized_concurrence(s, cut, a.delta)
    return emit_report("concurrence", {"cut": cut, "delta": a.delta}, {"concurrence": c}, a.format)


def cmd_wootters(a) -> str:
    rep = entanglement.wootters_concurrence(_read_state(a.file))
    quantity = {"concurrence": "max(0, xi1 - xi2 - xi3 - xi4)"}
    return emit_report("wootters", {}, rep.as_dict(), a.format, quantity)


def cmd_entropy(a) -> str:
    s = _read_state(a.file)
    cut = _int_list(a.cut, "--cut")
    value = states.entanglement_entropy(s, cut, a.renyi)
    unit = "bits" if a.bits else "nats"
    if a.bits:
        value /= math.log(2)
    return emit_report("entropy", {"cut": cut, "renyi": a.renyi}, {"entropy": value, "unit": unit}, a.format)


def cmd_model_xy(a) -> str:
    p = xy.XyParams(a.J, a.gamma, a.B, a.delta)
    if a.state is not None:
        es = xy.xy_eigensystem(p)
        if a.state not in es.labels:
            raise QbellError(f"state {a.state!r} not available here; choose from {', '.join(es.labels)}")
        return states.dumps_state(es[a.state].state) + "\n"
    if a.T is not None:
        return states.dumps_state(xy.xy_thermal(p, a.T)) + "\n"
    inputs = {"J": a.J, "gamma": a.gamma, "B": a.B, "delta": a.delta}
    if a.tc:
        tc = xy.xy_critical_temperature(p)
        quantity = {"T_c": "temperature where the thermal Wootters concurrence vanishes"}
        return emit_report("model xy --tc", inputs, {"T_c": tc}, a.format, quantity)
    es = xy.xy_eigensystem(p)
    results = {
        "degenerate": es.degenerate,
        "energies": {pr.label: pr.energy for pr in es.pairs},
        "concurrence": {pr.label: entanglement.concurrence_pure(pr.state, [1]) for pr in es.pairs},
    }
    return emit_report("model xy", inputs, results, a.format)


def cmd_model_wen(a) -> str:
    if a.lp is not None or a.lm is not None:
        if a.sites != 6 or a.lp is None or a.lm is None:
            raise UsageError("--lp/--lm need --sites 6 and both coefficients")
        psi = wen_plaquette.wen_plaquette_6_family(a.which, a.lp, a.lm)
    else:
        index = a.index if a.index is not None else (0 if a.sites == 4 else 1)
        psi = wen_plaquette.wen_plaquette_states(a.sites, index)
    return states.dumps_state(psi) + "\n"


def cmd_model_ghz2n(a) -> str:
    return states.dumps_state(ghz2n.ghz2n_state(a.n, a.lp, a.lm)) + "\n"


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex coefficient {text!r}") from exc


def cmd_model_cylinder(a) -> str:
    spec = cylinder.CylinderSpec(a.nl, _complex_arg(a.a00), _complex_arg(a.a01))
    p1, p2 = spec.p
    results = {
        "p1": p1,
        "p2": p2,
        "N_q": spec.N_q,
        "renyi": cylinder.cylinder_renyi(spec, a.order),
        "topological_part": cylinder.cylinder_topological_part(spec),
        "purity": cylinder.cylinder_purity(spec),
        "generalized_concurrence": cylinder.cylinder_concurrence(spec),
    }
    inputs = {"nl": a.nl, "a00": a.a00, "a01": a.a01, "order": a.order}
    quantity = {"renyi": "n_L ln 2 minus the topological part", "topological_part": "ln 2 - S_A(p1, p2)"}
    return emit_report("model cylinder", inputs, results, a.format, quantity)


def _points(text: str) -> list[tuple[float, float]]:
    pts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            L, s = tok.split(":")
            pts.append((float(L), float(s)))
        except ValueError as exc:
            raise UsageError(f"points must look like 'L:S,L:S', got {tok!r}") from exc
    return pts


def cmd_tee_fit(a) -> str:
    fit = tee.area_law_fit(_points(a.points))
    quantity = {"s_tee": "intercept of S = alpha L - S_TEE", "d": "exp(2 S_TEE), number of quasiparticle types"}
    return emit_report("tee fit", {"points": a.points}, fit.as_dict(), a.format, quantity)


def cmd_tee_from_gamma(a) -> str:
    lp2, lm2 = tee.lambda_from_gamma(a.gamma)
    results = {"lp2": lp2, "lm2": lm2, "entropy": tee.entropy_from_gamma(a.gamma, a.delta)}
    return emit_report("tee from-gamma", {"gamma": a.gamma, "delta": a.delta}, results, a.format)


def cmd_reproduce(a) -> tuple[str, int]:
    from qbell.reproduce import run_all

    results = run_all()
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} acceptance checks passed")
    return "\n".join(lines) + "\n", 0 if passed == len(results) else EXIT_CHECKS_FAILED


# --- parser ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(prog="qbell", description="Bell bounds, concurrences and entropies of qubit states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(p):
        p.add_argument("file", nargs="?", default="-", help="state JSON (default: stdin)")
        return p

    state = sub.add_parser("state", help="state inspection")
    state_sub = state.add_subparsers(dest="action", required=True, parser_class=_Parser)
    with_file(state_sub.add_parser("info", parents=[common])).set_defaults(func=cmd_state_info)

    for name, func, help_ in (
        ("rmatrix", cmd_rmatrix, "generalized R-matrix"),
        ("bound", cmd_bound, "R-matrix eigenvalue bound"),
    ):
        p = with_file(sub.add_parser(name, parents=[common], help=help_))
        p.add_argument("--pivot", type=int, default=None)
        p.add_argument("--order", default=None, help="non-pivot sites, e.g. '6,2,3,4,5'")
        p.set_defaults(func=func)

    p = with_file(sub.add_parser("optimize", parents=[common], help="numerical maximization over settings"))
    p.add_argument("--form", choices=("reduced", "full"), default="reduced")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--pivot", type=int, default=None)
    p.add_argument("--order", default=None)
    p.set_defaults(func=cmd_optimize)

    p = with_file(sub.add_parser("concurrence", parents=[common], help="(generalized) pure-state concurrence"))
    p.add_argument("--cut", required=True)
    p.add_argument("--delta", type=int, default=1)
    p.set_defaults(func=cmd_concurrence)

    with_file(sub.add_parser("wootters", parents=[common], help="two-qubit Wootters concurrence")).set_defaults(
        func=cmd_wootters
    )

    p = with_file(sub.add_parser("entropy", parents=[common], help="entanglement entropy of a cut"))
    p.add_argument("--cut", required=True)
    p.add_argument("--renyi", type=float, default=1.0)
    p.add_argument("--bits", action="store_true", help="report in bits instead of nats")
    p.set_defaults(func=cmd_entropy)

    model = sub.add_parser("model", help="generate model states and reports")
    model_sub = model.add_subparsers(dest="model", required=True, parser_class=_Parser)

    p = model_sub.add_parser("xy", parents=[common])
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True, help="anisotropy")
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0, help="field asymmetry")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--T", type=float, default=None, help="emit the thermal density matrix")
    mode.add_argument("--tc", action="store_true", help="report the critical temperature")
    mode.add_argument("--state", default=None, help="emit eigenstate 1+, 1-, 2+ or 2-")
    p.set_defaults(func=cmd_model_xy)

    p = model_sub.add_parser("wen", parents=[common])
    p.add_argument("--sites", type=int, choices=(4, 6), required=True)
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--lp", type=float, default=None)
    p.add_argument("--lm", type=float, default=None)
    p.add_argument("--which", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_model_wen)

    p = model_sub.add_parser("ghz2n", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lp", type=float, required=True)
    p.add_argument("--lm", type=float, required=True)
    p.set_defaults(func=cmd_model_ghz2n)

    p = model_sub.add_parser("cylinder", parents=[common])
    p.add_argument("--nl", type=int, required=True)
    p.add_argument("--a00", required=True, help="complex, e.g. 0.6 or 0.6+0.8j")
    p.add_argument("--a01", required=True)
    p.add_argument("--order", type=float, default=2.0)
    p.set_defaults(func=cmd_model_cylinder)

    t = sub.add_parser("tee", help="topological entanglement entropy")
    t_sub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = t_sub.add_parser("fit", parents=[common])
    p.add_argument("--points", required=True, help="'L:S,L:S,...'")
    p.set_defaults(func=cmd_tee_fit)
    p = t_sub.add_parser("from-gamma", parents=[common])
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_tee_from_gamma)

    r = sub.add_parser("reproduce", help="run the acceptance checks")
    r.add_argument("target", choices=("all",))
    r.set_defaults(func=cmd_reproduce)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except UsageError as exc:
        stderr.write(f"qbell: usage error: {exc}\n")
        return EXIT_USAGE
    except (QbellError, ValueError) as exc:
        stderr.write(f"qbell: {exc}\n")
        return EXIT_INVALID
    code = 0
    if isinstance(out, tuple):
        out, code = out
    stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
