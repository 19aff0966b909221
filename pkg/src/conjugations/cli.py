"""Command line front end: JSON in, JSON out.

Matrices travel as {"rows": n, "cols": n, "data": [[[re, im], ...], ...]},
measures as {"atoms": [{"theta": t, "weight": w}, ...]}, grids as
{"order": M, "values": [[re, im], ...]}.  Machine-readable JSON goes to
stdout, a one-line human summary to stderr.

Exit codes: 0 success, 2 invalid input, 3 mathematical refusal (the
requested object cannot exist), 4 tolerance failure (the numerics missed
the contract).
"""

import argparse
import json
import sys

import numpy as np

from . import family, measures, shifts, transforms
from .antilinear import AntilinearOperator
from .errors import (
    AbsoluteContinuityError,
    InputError,
    MembershipError,
    NotSelfDualError,
    ToleranceError,
)
from .linalg import four_unitary_split, haar_unitary, operator_norm, unitarity_defect
from .spectral import canonical_form, check_selfdual

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REFUSED = 3
EXIT_TOLERANCE = 4


def emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def note(msg):
    print(msg, file=sys.stderr)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")


def save_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def matrix_from_dict(obj, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise InputError(f"{where}: missing field '{key}'")
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
    except (TypeError, ValueError):
        raise InputError(f"{where}: rows/cols must be integers") from None
    data = obj["data"]
    if not isinstance(data, list) or len(data) != rows:
        raise InputError(f"{where}: data must be a list of {rows} rows")
    M = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{where}: data[{i}] must be a list of {cols} entries")
        for j, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != 2:
                raise InputError(f"{where}: data[{i}][{j}] must be a [re, im] pair")
            try:
                M[i, j] = float(cell[0]) + 1j * float(cell[1])
            except (TypeError, ValueError):
                raise InputError(f"{where}: data[{i}][{j}] has non-numeric parts") from None
    if not np.all(np.isfinite(M)):
        raise InputError(f"{where}: matrix entries must be finite")
    return M


def matrix_to_dict(M):
    M = np.asarray(M, dtype=complex)
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [[[float(v.real), float(v.imag)] for v in row] for row in M],
    }


def load_matrix(path):
    return matrix_from_dict(load_json(path), path)


def load_measure(path):
    return measures.AtomicMeasure.from_dict(load_json(path), path)


def format_point(lam):
    for value, label in ((1, "1"), (-1, "-1"), (1j, "i"), (-1j, "-i")):
        if abs(lam - value) <= 1e-9:
            return label
    return f"exp({float(np.angle(lam)):.6f}i)"


def _mismatch_entries(mismatches):
    return [
        {
            "eigenvalue": [float(lam.real), float(lam.imag)],
            "multiplicity": int(mult),
            "conjugate_multiplicity": int(conj_mult),
        }
        for lam, mult, conj_mult in mismatches
    ]


def _empty_family_message(mismatches):
    lam, mult, conj_mult = mismatches[0]
    return (
        f"C_c(U) is empty: eigenvalue {format_point(lam)} multiplicity {mult}, "
        f"conjugate multiplicity {conj_mult}"
    )


def _report_dict(n, passed, report, threshold):
    return {
        "n": int(n),
        "passed": bool(passed),
        "threshold": float(threshold),
        "isometry_defect": float(report.isometry_defect),
        "involution_defect": float(report.involution_defect),
        "commutation_defect": float(report.commutation_defect),
    }


def cmd_check(args):
    U = load_matrix(args.unitary)
    ok, mismatches = check_selfdual(U)
    emit({"selfdual": bool(ok), "mismatches": _mismatch_entries(mismatches)})
    note(f"self-dual: {'yes' if ok else 'no'}")
    return EXIT_OK


def _construct(args, builder):
    U = load_matrix(args.unitary)
    try:
        C = builder(U)
    except NotSelfDualError as e:
        raise NotSelfDualError(_empty_family_message(e.mismatches), e.mismatches) from None
    n = U.shape[0]
    passed, report = family.verify_membership(U, C)
    if args.output:
        save_json(args.output, matrix_to_dict(C.matrix))
        out = _report_dict(n, passed, report, family.membership_threshold(n))
    else:
        out = _report_dict(n, passed, report, family.membership_threshold(n))
        out["conjugation"] = matrix_to_dict(C.matrix)
    emit(out)
    note(f"commutation defect {report.commutation_defect:.3e}")
    if not passed:
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_canonical(args):
    return _construct(args, lambda U: family.canonical_conjugation(U))


def cmd_sample(args):
    return _construct(args, lambda U: family.sample(U, args.seed))


def cmd_verify(args):
    U = load_matrix(args.unitary)
    C = AntilinearOperator(load_matrix(args.conjugation))
    thr = args.tol if args.tol is not None else family.membership_threshold(U.shape[0])
    passed, report = family.verify_membership(U, C, threshold=thr)
    out = _report_dict(U.shape[0], passed, report, thr)
    out["symmetry_defect"] = float(report.symmetry_defect)
    emit(out)
    note(f"membership: {'pass' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


def cmd_decompose(args):
    U = load_matrix(args.unitary)
    C = AntilinearOperator(load_matrix(args.conjugation))
    try:
        params = family.decompose(U, C)
    except NotSelfDualError as e:
        raise NotSelfDualError(_empty_family_message(e.mismatches), e.mismatches) from None
    _, layout = canonical_form(U)
    out = {
        "pairs": [
            {"eigenvalue": [float(xi.real), float(xi.imag)], "size": int(m)}
            for xi, m in layout.pairs
        ],
        "ell": int(layout.ell),
        "kay": int(layout.kay),
        "v_blocks": [matrix_to_dict(v) for v in params.v_blocks],
        "q_plus": matrix_to_dict(params.q_plus),
        "q_minus": matrix_to_dict(params.q_minus),
    }
    if args.output:
        save_json(args.output, out)
        emit({k: out[k] for k in ("pairs", "ell", "kay")})
    else:
        emit(out)
    note(f"{len(params.v_blocks)} pair blocks, ell={layout.ell}, kay={layout.kay}")
    return EXIT_OK


def cmd_fourunit(args):
    A = load_matrix(args.matrix)
    scale, factors = four_unitary_split(A)
    total = scale * sum(factors)
    residual = float(np.linalg.norm(A - total))
    defects = [unitarity_defect(u) for u in factors]
    bound = 1e-9 * (1.0 + float(np.linalg.norm(A)))
    out = {
        "scale": float(scale),
        "operator_norm": float(operator_norm(A)),
        "residual": residual,
        "unitarity_defects": defects,
    }
    emit(out)
    note(f"residual {residual:.3e}")
    if residual > bound or max(defects) > 1e-9:
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_measure(args):
    if args.action == "reflect":
        mu = load_measure(args.files[0])
        emit(measures.reflect(mu).to_dict())
    elif args.action == "rn":
        mu = load_measure(args.files[0])
        h = measures.radon_nikodym(mu)
        emit({"h": [float(v) for v in h]})
    else:
        if len(args.files) != 2:
            raise InputError(f"measure {args.action} needs two measure files")
        mu, nu = load_measure(args.files[0]), load_measure(args.files[1])
        op = measures.lattice_meet if args.action == "meet" else measures.lattice_join
        emit(op(mu, nu).to_dict())
    note(f"measure {args.action}: ok")
    return EXIT_OK


def _grid_demo_report(kind, order, degree, preset, conj):
    return {
        "kind": kind,
        "order": int(order),
        "degree": int(degree),
        "preset": preset,
        "isometry_defect": float(conj.isometry_defect()),
        "involution_defect": float(conj.involution_defect()),
        "commutation_defect": float(conj.commutation_defect()),
    }


def cmd_shift_demo(args):
    M = args.order
    if args.degree == 1:
        if args.preset != "sincos":
            raise InputError("degree 1 supports the 'sincos' preset only")
        t = shifts.grid_arguments(M)
        conj = shifts.shift_conjugation(shifts.GridModel(M, np.exp(1j * np.cos(t))))
    elif args.degree == 2:
        if M % 2 != 0:
            raise InputError("--order must be even for degree 2")
        tau = shifts.grid_arguments(M // 2)
        zero = np.zeros(M // 2)
        if args.preset == "sincos":
            params = shifts.SymbolParams(np.sin(np.abs(tau)), zero, zero, zero)
        else:
            params = shifts.SymbolParams(np.full(M // 2, 0.5), np.abs(tau), zero, zero)
        conj = shifts.squared_shift_conjugation(params, M)
    else:
        raise InputError("--degree must be 1 or 2")
    report = _grid_demo_report("shift", M, args.degree, args.preset, conj)
    emit(report)
    note(f"grid defects <= {max(report['isometry_defect'], report['involution_defect'], report['commutation_defect']):.3e}")
    return EXIT_OK


def _transform_demo(args, kind):
    N = args.size
    rng = np.random.default_rng(args.seed)
    if kind == "fourier":
        m = N // 4
        if N % 4 != 0 or N == 0:
            raise InputError("--size must be a positive multiple of 4")
        C = transforms.fourier_conjugation(
            N,
            transforms.real_symmetric_orthogonal(m, rng),
            transforms.real_symmetric_orthogonal(m, rng),
            haar_unitary(m, rng),
        )
        model = transforms.FourBlockModel(N).matrix()
    else:
        if N % 2 != 0 or N == 0:
            raise InputError("--size must be a positive even number")
        C = transforms.hilbert_conjugation(N, haar_unitary(N // 2, rng))
        model = transforms.TwoBlockModel(N).matrix()
    passed, report = family.verify_membership(model, C, threshold=1e-12 * N)
    out = _report_dict(N, passed, report, 1e-12 * N)
    out["kind"] = kind
    out["seed"] = int(args.seed)
    emit(out)
    note(f"{kind} demo: {'pass' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


def cmd_fourier_demo(args):
    return _transform_demo(args, "fourier")


def cmd_hilbert_demo(args):
    return _transform_demo(args, "hilbert")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conjugations",
        description="Commuting conjugations of unitary operators: check, construct, sample, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="self-duality verdict with mismatch report")
    p.add_argument("unitary")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canonical", help="canonical commuting conjugation")
    p.add_argument("unitary")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("sample", help="random member of the commuting family")
    p.add_argument("unitary")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="membership defects and verdict")
    p.add_argument("unitary")
    p.add_argument("conjugation")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="recover the block parameters of a member")
    p.add_argument("unitary")
    p.add_argument("conjugation")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("fourunit", help="four-unitary decomposition of a square matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_fourunit)

    p = sub.add_parser("measure", help="atomic measure operations")
    p.add_argument("action", choices=["reflect", "rn", "meet", "join"])
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("shift-demo", help="grid shift conjugation defect report")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--preset", choices=["sincos", "lambda"], default="sincos")
    p.set_defaults(func=cmd_shift_demo)

    p = sub.add_parser("fourier-demo", help="random Fourier-model conjugation report")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fourier_demo)

    p = sub.add_parser("hilbert-demo", help="random Hilbert-model conjugation report")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_hilbert_demo)

    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as e:
        emit({"error": {"code": EXIT_INPUT, "message": str(e)}})
        note(f"error: {e}")
        return EXIT_INPUT
    except (NotSelfDualError, AbsoluteContinuityError, MembershipError) as e:
        emit({"error": {"code": EXIT_REFUSED, "message": str(e)}})
        note(f"refused: {e}")
        return EXIT_REFUSED
    except ToleranceError as e:
        emit({"error": {"code": EXIT_TOLERANCE, "message": str(e)}})
        note(f"tolerance failure: {e}")
        return EXIT_TOLERANCE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
