"""Command line entry point ``hopfkit``.

Exit codes: 0 success, 1 validation failure, 2 a structural audit failed."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, linalg, oracles
from .datafile import dump_reduced, load_datum
from .datum import (check_dj2, check_nli, nli_relation, regularity_and_reductivity, to_reduced, try_cartan,
                    validate_linking, validate_yd)
from .engine import MINUS, PLUS, AlgebraHandle, degrees_up_to
from .engine.form import gram_determinant, gram_matrix
from .engine.identities import check_all
from .errors import AuditFailure, HopfkitError, InvalidDatum
from .lattice import weight_leq
from .presets import PRESETS, preset
from .representations import (casimir_apply, omega_commutation_check, decompose, g_function, is_dominant, is_integrable,
                              simple_module_from_m, summand_eigenvalues, tensor)
from .representations.modules import dominant_character


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# output helpers

class Output:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.tsv = getattr(args, "tsv", False)

    def emit(self, report, table=None, text=None):
        if self.json:
            print(json.dumps(report, indent=2, sort_keys=True))
        elif self.tsv and table is not None:
            header, rows = table
            print("\t".join(header))
            for r in rows:
                print("\t".join(str(x) for x in r))
        elif text is not None:
            print(text)
        else:
            for k, v in report.items():
                print(f"{k}: {v}")


def _load(args):
    """A ReducedDatum from --preset or a datum file; YD files are reduced when perfect."""
    if getattr(args, "preset", None):
        return preset(args.preset)
    if not getattr(args, "datum", None):
        raise InvalidDatum("give a datum file or --preset")
    loaded = load_datum(args.datum)
    if loaded.kind == "reduced":
        return loaded.reduced
    return to_reduced(loaded.yd, loaded.linking, name=args.datum)


def _handle(args, red=None):
    red = red or _load(args)
    ell = getattr(args, "ell", None)
    if ell:
        red = red.with_ell([red.space.parse(x) for x in ell.split(",")])
    return AlgebraHandle(red, args.max_degree)


def _m_of(handle, text, flag):
    m = _ints(text)
    if len(m) != handle.theta:
        raise InvalidDatum(f"{flag} needs {handle.theta} entries, got {len(m)}")
    return m


# datum

def cmd_datum_validate(args, out):
    if args.preset:
        red = preset(args.preset)
        out.emit({"valid": True, "kind": "reduced", "cartan": red.cartan.to_dict()})
        return 0
    loaded = load_datum(args.datum)
    if loaded.kind == "reduced":
        out.emit({"valid": True, "kind": "reduced", "cartan": loaded.reduced.cartan.to_dict()})
        return 0
    yd = validate_yd(loaded.yd)
    link = validate_linking(loaded.yd, loaded.linking)
    out.emit({"valid": True, "kind": "yd", "yd": yd.to_dict(), "linking": link.to_dict()})
    return 0


def _analyze_reduced(red):
    cartan = try_cartan(red)
    rep = {
        "name": red.name,
        "theta": red.theta,
        "group_rank": red.group.rank,
        "braiding": [[str(x) for x in row] for row in red.q],
        "classes": [[i + 1 for i in c] for c in red.similar_classes()],
        "cartan": cartan.to_dict() if cartan else None,
        "reductivity": regularity_and_reductivity(red).to_dict(),
        "nli": check_nli(red),
    }
    rel = nli_relation(red)
    if rel is not None:
        rep["nli_relation"] = rel
    dj2 = check_dj2(red) if cartan else None
    rep["dj2"] = dj2.to_dict() if dj2 else None
    rep["pre_nichols"] = bool(cartan and not cartan.finite_type and dj2 is None)
    return rep


def cmd_datum_analyze(args, out):
    if not args.preset and args.datum:
        loaded = load_datum(args.datum)
        if loaded.kind == "yd":
            yd = validate_yd(loaded.yd)
            link = validate_linking(loaded.yd, loaded.linking)
            rep = {"kind": "yd", "yd": yd.to_dict(), "linking": link.to_dict(),
                   "gamma_reductive": link.gamma_reductive}
            if link.perfect and link.condition:
                rep["reduced"] = _analyze_reduced(to_reduced(loaded.yd, loaded.linking))
            out.emit(rep)
            return 0
        red = loaded.reduced
    else:
        red = _load(args)
    rep = {"kind": "reduced", **_analyze_reduced(red)}
    out.emit(rep)
    return 0


def cmd_datum_dump(args, out):
    print(json.dumps(dump_reduced(_load(args)), indent=2))
    return 0


# algebra

def cmd_algebra_dims(args, out):
    h = _handle(args)
    top = args.max_height if args.max_height is not None else h.max_degree
    sides = {"plus": [PLUS], "minus": [MINUS], "both": [MINUS, PLUS]}[args.side]
    names = {MINUS: "dim_minus", PLUS: "dim_plus"}
    rows = []
    for alpha in degrees_up_to(h.theta, top):
        rows.append([",".join(map(str, alpha))] + [h.dim(s, alpha) for s in sides])
    header = ["alpha"] + [names[s] for s in sides]
    rep = {"dims": [dict(zip(header, r)) for r in rows], "flags": h.flags()}
    text = "\n".join("  ".join(f"{k}={v}" for k, v in zip(header, r)) for r in rows)
    out.emit(rep, (header, rows), text)
    return 0


def cmd_algebra_gram(args, out):
    h = _handle(args)
    alpha = _m_of(h, args.alpha, "--alpha")
    G = gram_matrix(h, alpha)
    det = gram_determinant(h, alpha)
    rep = {
        "alpha": alpha,
        "rows": ["F" + "".join(str(i + 1) for i in w) for w in h.graded_basis(MINUS, alpha).words],
        "cols": ["E" + "".join(str(i + 1) for i in w) for w in h.graded_basis(PLUS, alpha).words],
        "gram": [[str(x) for x in row] for row in G],
        "determinant": str(det),
    }
    out.emit(rep, (["row"] + rep["cols"], [[r] + g for r, g in zip(rep["rows"], rep["gram"])]))
    return 0 if det else 2


def cmd_algebra_identities(args, out):
    h = _handle(args)
    results = check_all(h, args.max_height, args.seed)
    rows = [(r.name, "PASS" if r.ok else "FAIL", r.cases) for r in results]
    if h.cartan.finite_type:
        L = simple_module_from_m(h, [1] * h.theta)
        fails = omega_commutation_check(h, L)
        rows.append(("Omega commutation on L(1,...,1)", "PASS" if not fails else "FAIL", 2 * h.theta))
    ok = all(r[1] == "PASS" for r in rows)
    rep = {"results": [{"identity": a, "status": b, "cases": c} for a, b, c in rows], "ok": ok,
           "flags": h.flags()}
    out.emit(rep, (["identity", "status", "cases"], rows),
             "\n".join(f"{b}  {a}  ({c} cases)" for a, b, c in rows))
    return 0 if ok else 2


# modules

def _weight_table(L):
    rows = []
    for alpha, w, d in zip(L.labels, L.weights, L.dims):
        rows.append((",".join(map(str, alpha)), "(" + ", ".join(str(v) for v in w.values) + ")", d))
    return rows


def cmd_module_simple(args, out):
    h = _handle(args)
    m = _m_of(h, args.m, "--m")
    L = simple_module_from_m(h, m)
    fails = L.audit_relations()
    rows = _weight_table(L)
    rep = {"m": m, "dim": L.dim,
           "weights": [{"alpha": list(map(int, a.split(","))), "weight": w, "mult": d} for a, w, d in rows],
           "relations_ok": not fails, "integrable": is_integrable(L)}
    text = f"L(m={m}): dim {L.dim}"
    if args.table:
        text += "\n" + "\n".join(f"  alpha=({a})  weight {w}  mult {d}" for a, w, d in rows)
    out.emit(rep, (["alpha", "weight", "mult"], rows), text)
    return 2 if fails else 0


def _tensor(args, h):
    m1 = _m_of(h, args.m1, "--m1")
    m2 = _m_of(h, args.m2, "--m2")
    L1, L2 = simple_module_from_m(h, m1), simple_module_from_m(h, m2)
    return m1, m2, tensor(h, L1, L2)


def cmd_module_tensor(args, out):
    h = _handle(args)
    m1, m2, T = _tensor(args, h)
    fails = T.audit_relations()
    if fails:
        raise AuditFailure("tensor module violates relations: " + "; ".join(fails[:5]))
    rep = {"m1": m1, "m2": m2, "dim": T.dim, "weight_dims": sorted(T.dims, reverse=True)}
    if args.decompose:
        dec = decompose(h, T)
        rep["decomposition"] = dec.to_dict()
        text = " + ".join(f"{s.multiplicity}*L({','.join(map(str, s.m))})" for s in dec.summands)
        text = f"L({','.join(map(str, m1))}) x L({','.join(map(str, m2))}) = {text}   [{dec.audit_sum} = {T.dim}]"
    else:
        text = f"dim = {T.dim}"
    out.emit(rep, None, text)
    return 0


def cmd_module_casimir(args, out):
    h = _handle(args)
    if args.m2:
        args.m1 = args.m
        _, _, M = _tensor(args, h)
        dec = decompose(h, M)
        G = g_function(h, M.weights[0], args.allow_degenerate_G)
        eig = summand_eigenvalues(h, M, dec, G)
    else:
        M = simple_module_from_m(h, _m_of(h, args.m, "--m"))
        G = g_function(h, M.highest_weight, args.allow_degenerate_G)
        OG = casimir_apply(h, M, G)
        val = G(M.highest_weight).to_scalar()
        eig = [(M.m, val, linalg.equal(OG, linalg.scale(linalg.identity(h.space, M.dim), val)))]
    vals = [str(v) for _, v, _ in eig]
    distinct = len(set(vals)) == len(vals)
    rep = {"summands": [{"m": m, "eigenvalue": str(v), "scalar": ok} for m, v, ok in eig],
           "distinct": distinct, "omega_commutation_ok": not omega_commutation_check(h, M)}
    text = "\n".join(f"L({','.join(map(str, m))}): Omega_G = {v} * id  [{'ok' if ok else 'NOT SCALAR'}]"
                     for m, v, ok in eig) + f"\ndistinct eigenvalues: {distinct}"
    out.emit(rep, None, text)
    return 0 if all(ok for _, _, ok in eig) and rep["omega_commutation_ok"] else 2


# G-function check

def cmd_gcheck(args, out):
    h = _handle(args)
    d = h.datum
    nli = check_nli(d)
    rep = {"nli": nli}
    if args.counterexample:
        rel = nli_relation(d)
        if rel is None:
            rep["verdict"] = "Nli holds; no counterexample to G-separation exists"
            out.emit(rep)
            return 0
        m = _m_of(h, args.m, "--m") if args.m else [2] * h.theta
        chi_p = dominant_character(h, m)
        chi = chi_p
        for i, n in enumerate(rel):
            chi = chi * d.chi[i] ** n
        G = g_function(h, chi_p, allow_degenerate=True)
        g1, g2 = G(chi_p), G(chi)
        rep.update({
            "relation": rel,
            "chi_prime": [str(v) for v in chi_p.values], "m_prime": is_dominant(h, chi_p),
            "chi": [str(v) for v in chi.values], "m": is_dominant(h, chi),
            "chi_prime_leq_chi": weight_leq(chi_p, chi, d.chi),
            "G_chi_prime": str(g1), "G_chi": str(g2), "G_equal": g1 == g2,
            "allow_degenerate_G": True,
        })
        rep["verdict"] = ("G fails to separate the dominant weights chi' < chi" if g1 == g2
                          else "G separates the two weights")
        out.emit(rep)
        return 0
    chi0 = dominant_character(h, _m_of(h, args.m, "--m") if args.m else [0] * h.theta)
    G = g_function(h, chi0, args.allow_degenerate_G)
    checks = []
    for alpha in degrees_up_to(h.theta, args.max_height):
        chi = chi0 * d.chi_alpha(alpha)
        checks.append({"alpha": list(alpha), "G": str(G(chi)), "recursion": G.recursion_holds(chi),
                       "separated": G(chi) != G(chi0)})
    rep["checks"] = checks
    rep["ok"] = all(c["recursion"] for c in checks) and (not nli or all(c["separated"] for c in checks))
    out.emit(rep)
    return 0 if rep["ok"] else 2


# oracles

def cmd_oracle(args, out):
    a = _oracle_cartan(args.type)
    rs = oracles.RootSystem(a)
    if args.what == "roots":
        rep = {"positive_roots": [list(r) for r in rs.positive_roots]}
    elif args.what == "kostant":
        alpha = _ints(args.alpha)
        rep = {"alpha": alpha, "partitions": oracles.kostant_partition(rs, alpha)}
    elif args.what == "weyl-dim":
        m = _ints(args.m)
        rep = {"m": m, "dim": oracles.weyl_dim(rs, m)}
    else:
        m = _ints(args.m)
        mult = oracles.freudenthal(rs, m)
        rep = {"m": m, "multiplicities": [{"alpha": list(k), "mult": v} for k, v in sorted(mult.items())]}
    out.emit(rep)
    return 0


def _oracle_cartan(name):
    kind, n = name[0].upper(), name[1:]
    if not n.isdigit():
        raise InvalidDatum(f"type must look like A2, B2, G2; got {name!r}")
    return oracles.cartan_matrix(kind, int(n))


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--tsv", action="store_true", help="TSV output for tables")
    common.add_argument("--max-degree", type=int, default=None, help="degree cap (default 10 or HOPFKIT_MAX_DEGREE)")

    dat = argparse.ArgumentParser(add_help=False, parents=[common])
    dat.add_argument("datum", nargs="?", help="datum JSON file")
    dat.add_argument("--preset", choices=sorted(PRESETS), help="use a built-in datum")
    dat.add_argument("--ell", help="override ell_i, comma-separated scalars")

    p = argparse.ArgumentParser(prog="hopfkit", description="Exact computations in U(D_red, ell).")
    p.add_argument("--version", action="version", version=f"hopfkit {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    pd = sub.add_parser("datum", help="validate and analyze data").add_subparsers(dest="sub", required=True)
    pd.add_parser("validate", parents=[dat]).set_defaults(fn=cmd_datum_validate)
    pd.add_parser("analyze", parents=[dat]).set_defaults(fn=cmd_datum_analyze)
    pd.add_parser("dump", parents=[dat]).set_defaults(fn=cmd_datum_dump)

    pa = sub.add_parser("algebra", help="graded dimensions, Gram matrices, identities").add_subparsers(
        dest="sub", required=True)
    x = pa.add_parser("dims", parents=[dat])
    x.add_argument("--max-height", type=int, default=None, help="largest |alpha| listed (default: the degree cap)")
    x.add_argument("--side", choices=["plus", "minus", "both"], default="both")
    x.set_defaults(fn=cmd_algebra_dims)
    x = pa.add_parser("gram", parents=[dat])
    x.add_argument("--degree", "--alpha", dest="alpha", required=True, help="degree alpha, e.g. 1,1")
    x.set_defaults(fn=cmd_algebra_gram)
    x = pa.add_parser("check-identities", parents=[dat])
    x.add_argument("--max-height", type=int, default=3)
    x.add_argument("--seed", type=int, default=0)
    x.set_defaults(fn=cmd_algebra_identities)

    pm = sub.add_parser("module", help="simple modules, tensor products, Casimir").add_subparsers(
        dest="sub", required=True)
    x = pm.add_parser("simple", parents=[dat])
    x.add_argument("--m", required=True)
    x.add_argument("--table", action="store_true")
    x.set_defaults(fn=cmd_module_simple)
    x = pm.add_parser("tensor", parents=[dat])
    x.add_argument("--m1", required=True)
    x.add_argument("--m2", required=True)
    x.add_argument("--decompose", action="store_true")
    x.set_defaults(fn=cmd_module_tensor)
    x = pm.add_parser("casimir", parents=[dat])
    x.add_argument("--m", required=True)
    x.add_argument("--m2", help="use L(m) x L(m2) instead of L(m)")
    x.add_argument("--allow-degenerate-G", action="store_true")
    x.set_defaults(fn=cmd_module_casimir)

    x = sub.add_parser("gcheck", parents=[dat], help="G-function recursion and separation")
    x.add_argument("--counterexample", action="store_true", help="exhibit chi' < chi with G(chi) = G(chi')")
    x.add_argument("--allow-degenerate-G", action="store_true")
    x.add_argument("--m", help="m-vector of the anchor")
    x.add_argument("--max-height", type=int, default=3)
    x.set_defaults(fn=cmd_gcheck)

    x = sub.add_parser("oracle", parents=[common], help="classical reference values")
    x.add_argument("what", choices=["roots", "kostant", "weyl-dim", "freudenthal"])
    x.add_argument("--type", required=True, help="finite type, e.g. A2")
    x.add_argument("--alpha", default="")
    x.add_argument("--m", default="")
    x.set_defaults(fn=cmd_oracle)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        return args.fn(args, out)
    except HopfkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
