"""Built-in example registry: the standard algebra families, deformation
sequences, their equivariant data, and the negative-control mutations.

Every builder is deterministic in its parameters; the CLI dispatches on
these names so the canonical computations are one-liners.
"""

from __future__ import annotations

from .scalars import FieldSpec, parse_scalar
from .ncalg import FreeAlgebra, Generator, NcPoly, Presentation, groebner_truncated
from .hopf import (
    GROUPLIKE,
    ActionSpec,
    HopfPresented,
    PresentedHopfAction,
    cyclic_group_algebra,
    jordan_plane,
    qls,
    quantum_line,
    cartan_check,
)
from .defseq import (
    AlgebraMapSpec,
    DeformationSequence,
    HopfDefSequence,
    check_C_equivariant,
    check_deformation_sequence,
    check_hopf_def_sequence,
    check_K_equivariant,
    smash_sequences,
)
from .twisted import flip_twisting, smash_twisting, twisted_flatness_check, validate_twisting_map


ALGEBRA_EXAMPLES = ("quantum-line", "taft", "sweedler", "qls", "jordan", "cartan-check")
SEQUENCE_EXAMPLES = (
    "qline-seq",
    "qls-seq",
    "qls-bad",
    "jordan-seq",
    "laurent-seq",
    "laurent-p-seq",
    "qline-seq-pi-broken",
    "qline-seq-bad-kernel",
)
TTP_EXAMPLES = ("smash-qline", "smash-jordan", "smash-qls", "flip", "flip-bad")
SMASH_PAIRS = {("qline-seq", "laurent-seq"), ("jordan-seq", "laurent-p-seq")}


def default_field_for_order(n: int) -> FieldSpec:
    return FieldSpec.rationals() if n <= 2 else FieldSpec.cyclotomic(n)


def resolve_q(params, n):
    from .scalars import Scalar, infer_field

    field = params.get("field")
    if field is not None and not isinstance(field, FieldSpec):
        field = FieldSpec.parse(field)
    q_val = params.get("q")
    if isinstance(q_val, Scalar):
        return q_val.field, q_val
    if q_val is None:
        field = field or default_field_for_order(n)
        if field.kind == "cyclotomic" and n > 2 and field.param % n != 0:
            raise ValueError(f"{field} has no primitive {n}-th root of unity")
        if field.kind == "cyclotomic" and field.param % n == 0 and n > 1:
            q = field.zeta(field.param // n)
        elif n == 1:
            q = field.one()
        else:
            q = field.from_int(-1) if n == 2 else field.zeta(field.param // n)
        return field, q
    if field is None:
        field = infer_field(q_val)
    return field, parse_scalar(q_val, field)


# -- algebra examples ----------------------------------------------------------


def build_quantum_line(params):
    n = int(params.get("n", 3))
    field, q = resolve_q(params, n)
    return quantum_line(n, q), {"n": n, "q": str(q), "field": str(field)}


def build_taft(params):
    n = int(params.get("n", 2))
    field, q = resolve_q(params, n)
    R = quantum_line(n, q)
    K = cyclic_group_algebra(field, n)
    act = ActionSpec.cyclic_diagonal(K, R, [q])
    from .hopf import smash_product

    smash = smash_product(R, K, act)
    return smash.result, {"n": n, "q": str(q), "field": str(field)}


def build_sweedler(params):
    params = dict(params)
    params["n"] = 2
    return build_taft(params)


def build_qls(params):
    field = params.get("field")
    if field is not None and not isinstance(field, FieldSpec):
        field = FieldSpec.parse(field)
    field = field or FieldSpec.rationals()
    q11 = parse_scalar(str(params.get("q11", "-1")), field)
    q22 = parse_scalar(str(params.get("q22", "-1")), field)
    q12 = parse_scalar(str(params.get("q12", "1")), field)
    data = qls([[q11, q12], [q12.inverse(), q22]])
    return data, {
        "field": str(field),
        "q11": str(q11),
        "q22": str(q22),
        "q12": str(q12),
        "big_n": data.big_n,
        "big_m": data.big_m,
    }


def build_jordan(params):
    p = int(params.get("p", 3))
    restricted = bool(params.get("restricted", True))
    alg = jordan_plane(p, restricted)
    return alg, {"p": p, "restricted": restricted, "field": f"F{p}"}


def build_cartan(params):
    rank = int(params.get("rank", 1))
    q_text = str(params.get("q", "zeta4"))
    from .scalars import infer_field

    field = params.get("field")
    if field is not None and not isinstance(field, FieldSpec):
        field = FieldSpec.parse(field)
    field = field or infer_field(q_text)
    q = parse_scalar(q_text, field)
    if rank == 1:
        matrix = [[q]]
        roots = [(1,)]
    elif rank == 2:
        # Cartan type A2: q_ij q_ji = q^{-1} off-diagonal
        matrix = [[q, q.inverse()], [field.one(), q]]
        roots = [(1, 0), (0, 1), (1, 1)]
    else:
        raise ValueError("cartan-check supports rank 1 and 2")
    report = cartan_check(matrix, roots)
    return report, {"rank": rank, "q": str(q), "field": str(field)}


# -- sequences -----------------------------------------------------------------


def _free_poly_algebra(field, decls, relations=(), priority=None, cutoff=12,
                       augmentation=None):
    free = FreeAlgebra(field, [Generator(n, d) for n, d in decls], priority=priority)
    rels = [free.parse(r) if isinstance(r, str) else r for r in relations]
    pres = Presentation(free, rels, augmentation or {})
    return groebner_truncated(pres, cutoff)


def build_qline_sequence(params, D):
    n = int(params.get("n", 3))
    field, q = resolve_q(params, n)
    Z = _free_poly_algebra(field, [("Xn", n)], cutoff=D)
    Q = _free_poly_algebra(field, [("X", 1)], cutoff=D)
    R = quantum_line(n, q, cutoff=D)
    iota = AlgebraMapSpec(Z, Q, [Q.free.gen(0) ** n], name="iota")
    pi = AlgebraMapSpec(Q, R, [R.free.gen(0)], name="pi")
    seq = DeformationSequence(Z, Q, R, iota, pi, name=f"qline-seq(n={n})")
    return seq, {"n": n, "q": str(q), "field": str(field)}


def build_qline_sequence_bad_kernel(params, D):
    n = int(params.get("n", 3))
    field, q = resolve_q(params, n)
    Z = _free_poly_algebra(field, [("X2n", 2 * n)], cutoff=D)
    Q = _free_poly_algebra(field, [("X", 1)], cutoff=D)
    R = quantum_line(n, q, cutoff=D)
    iota = AlgebraMapSpec(Z, Q, [Q.free.gen(0) ** (2 * n)], name="iota")
    pi = AlgebraMapSpec(Q, R, [R.free.gen(0)], name="pi")
    seq = DeformationSequence(Z, Q, R, iota, pi, name=f"qline-seq-bad-kernel(n={n})")
    return seq, {"n": n, "q": str(q), "field": str(field), "mutation": "Z too small"}


def _qls_sequence(field, q11, q22, q12, D, name):
    data = qls([[q11, q12], [q12.inverse(), q22]], cutoff=D)
    n1, n2 = data.big_n
    qfree = FreeAlgebra(field, [Generator("X1", 1), Generator("X2", 1)])
    qrel = qfree.gen(0) * qfree.gen(1) - (qfree.gen(1) * qfree.gen(0)).scale(q12)
    Q = groebner_truncated(Presentation(qfree, [qrel]), D)
    Z = _free_poly_algebra(
        field,
        [("Z1", n1), ("Z2", n2)],
        relations=["Z1*Z2 - Z2*Z1"],
        cutoff=D,
    )
    iota = AlgebraMapSpec(Z, Q, [qfree.gen(0) ** n1, qfree.gen(1) ** n2], name="iota")
    pi = AlgebraMapSpec(
        Q, data.algebra, [data.algebra.free.gen(0), data.algebra.free.gen(1)], name="pi"
    )
    seq = DeformationSequence(Z, Q, data.algebra, iota, pi, name=name)
    return seq, data


def build_qls_sequence(params, D):
    field = params.get("field")
    if field is not None and not isinstance(field, FieldSpec):
        field = FieldSpec.parse(field)
    field = field or FieldSpec.rationals()
    q11 = parse_scalar(str(params.get("q11", "-1")), field)
    q22 = parse_scalar(str(params.get("q22", "-1")), field)
    q12 = parse_scalar(str(params.get("q12", "-1")), field)
    seq, data = _qls_sequence(field, q11, q22, q12, D, "qls-seq")
    return seq, {
        "field": str(field), "q11": str(q11), "q22": str(q22), "q12": str(q12),
        "big_n": data.big_n, "big_m": data.big_m,
    }


def build_qls_bad_sequence(params, D):
    field = FieldSpec.cyclotomic(3)
    z3 = field.zeta()
    m1 = field.from_int(-1)
    seq, data = _qls_sequence(field, z3, z3, m1, D, "qls-bad")
    return seq, {
        "field": str(field), "q11": str(z3), "q22": str(z3), "q12": str(m1),
        "big_n": data.big_n, "big_m": data.big_m,
        "mutation": "M_i does not divide N_i",
    }


def build_jordan_sequence(params, D):
    p = int(params.get("p", 3))
    field = FieldSpec.prime(p)
    J = jordan_plane(p, False, cutoff=max(D, 3 * p))
    RJ = jordan_plane(p, True, cutoff=max(D, 2 * p + 2))
    Z = _free_poly_algebra(
        field, [("z1", p), ("z2", p)], relations=["z1*z2 - z2*z1"], cutoff=D
    )
    x, y = J.free.gen(0), J.free.gen(1)
    iota = AlgebraMapSpec(Z, J, [x ** p, y ** p], name="iota")
    pi = AlgebraMapSpec(J, RJ, [RJ.free.gen(0), RJ.free.gen(1)], name="pi")
    seq = DeformationSequence(Z, J, RJ, iota, pi, name=f"jordan-seq(p={p})")
    return seq, {"p": p, "field": str(field)}


def _laurent_hopf(field, names, degree, D):
    free = FreeAlgebra(field, [Generator(names[0], degree), Generator(names[1], degree)])
    pres = Presentation(
        free,
        [free.gen(0) * free.gen(1) - free.one(), free.gen(1) * free.gen(0) - free.one()],
        {0: field.one(), 1: field.one()},
    )
    alg = groebner_truncated(pres, D)
    return HopfPresented(alg, {names[0]: GROUPLIKE, names[1]: GROUPLIKE})


def _cyclic_hopf(field, name, n, D):
    free = FreeAlgebra(field, [Generator(name, 1)])
    pres = Presentation(free, [free.gen(0) ** n - free.one()], {0: field.one()})
    alg = groebner_truncated(pres, D)
    return HopfPresented(alg, {name: GROUPLIKE})


def build_laurent_sequence(params, D, p_version=False):
    if p_version:
        n = int(params.get("p", 3))
        field = FieldSpec.prime(n)
        label = f"laurent-p-seq(p={n})"
    else:
        n = int(params.get("n", 3))
        field, _ = resolve_q(params, n)
        label = f"laurent-seq(n={n})"
    W = _laurent_hopf(field, ("w", "wi"), n, D)
    H = _laurent_hopf(field, ("g", "gi"), 1, D)
    K = _cyclic_hopf(field, "gamma", n, D)
    jmap = AlgebraMapSpec(
        W.algebra, H.algebra, [H.free.gen(0) ** n, H.free.gen(1) ** n], name="j"
    )
    pmap = AlgebraMapSpec(
        H.algebra, K.algebra, [K.free.gen(0), K.free.gen(0) ** (n - 1)], name="p"
    )
    c = HopfDefSequence(W, H, K, jmap, pmap, name=label)
    return c, {"n": n, "field": str(field)}


def qline_actions(seq: DeformationSequence, c: HopfDefSequence, q, q_action=None):
    """H-actions on Z, Q, R for the quantum-line sequence: g.X = q X."""
    qa = q_action if q_action is not None else q
    H = c.H
    n = len(seq.iota.images[0].leading()[0])  # degree of X^n image
    field = q.field
    zq = qa ** n
    actZ = PresentedHopfAction(
        H, seq.Z,
        {(0, 0): seq.Z.free.gen(0).scale(zq), (1, 0): seq.Z.free.gen(0).scale(zq ** (-1))},
    )
    actQ = PresentedHopfAction(
        H, seq.Q,
        {(0, 0): seq.Q.free.gen(0).scale(qa), (1, 0): seq.Q.free.gen(0).scale(qa ** (-1))},
    )
    actR = PresentedHopfAction(
        H, seq.R,
        {(0, 0): seq.R.free.gen(0).scale(qa), (1, 0): seq.R.free.gen(0).scale(qa ** (-1))},
    )
    return {"Z": actZ, "Q": actQ, "R": actR}


def jordan_actions(seq: DeformationSequence, c: HopfDefSequence):
    """YD-triple action g.x = x, g.y = y + x on the Jordan sequence."""
    H = c.H
    x, y = seq.Q.free.gen(0), seq.Q.free.gen(1)
    rx, ry = seq.R.free.gen(0), seq.R.free.gen(1)
    z1, z2 = seq.Z.free.gen(0), seq.Z.free.gen(1)
    actZ = PresentedHopfAction(H, seq.Z, {(0, 0): z1, (1, 0): z1, (0, 1): z2, (1, 1): z2})
    actQ = PresentedHopfAction(H, seq.Q, {(0, 0): x, (0, 1): y + x, (1, 0): x, (1, 1): y - x})
    actR = PresentedHopfAction(H, seq.R, {(0, 0): rx, (0, 1): ry + rx, (1, 0): rx, (1, 1): ry - rx})
    return {"Z": actZ, "Q": actQ, "R": actR}


# -- dispatch -----------------------------------------------------------------


def run_sequence_check(name, params, D):
    """(report, inputs, extras) for a named sequence example."""
    if name == "qline-seq":
        seq, inputs = build_qline_sequence(params, D)
        return check_deformation_sequence(seq, D), inputs, {"sequence": seq.describe()}
    if name == "qline-seq-bad-kernel":
        seq, inputs = build_qline_sequence_bad_kernel(params, D)
        return check_deformation_sequence(seq, D), inputs, {"sequence": seq.describe()}
    if name == "qls-seq":
        seq, inputs = build_qls_sequence(params, D)
        return check_deformation_sequence(seq, D), inputs, {"sequence": seq.describe()}
    if name == "qls-bad":
        seq, inputs = build_qls_bad_sequence(params, D)
        return check_deformation_sequence(seq, D), inputs, {"sequence": seq.describe()}
    if name == "jordan-seq":
        seq, inputs = build_jordan_sequence(params, D)
        return check_deformation_sequence(seq, D), inputs, {"sequence": seq.describe()}
    if name == "laurent-seq":
        c, inputs = build_laurent_sequence(params, D)
        return check_hopf_def_sequence(c, D), inputs, {"sequence": c.describe()}
    if name == "laurent-p-seq":
        c, inputs = build_laurent_sequence(params, D, p_version=True)
        return check_hopf_def_sequence(c, D), inputs, {"sequence": c.describe()}
    if name == "qline-seq-pi-broken":
        n = int(params.get("n", 3))
        field, q = resolve_q(params, n)
        seq, inputs = build_qline_sequence(params, D)
        K = cyclic_group_algebra(field, n)
        actions = {
            "Z": ActionSpec.cyclic_diagonal(K, seq.Z, [q ** (2 * n)]),
            "Q": ActionSpec.cyclic_diagonal(K, seq.Q, [q ** 2]),
            "R": ActionSpec.cyclic_diagonal(K, seq.R, [q]),
        }
        inputs["mutation"] = "Q-action twisted by q^2 against the R-action"
        return check_K_equivariant(seq, K, actions, D), inputs, {"sequence": seq.describe()}
    raise KeyError(f"unknown sequence example {name!r}")


def run_smash(m_name, c_name, params, D):
    """(out_seq, eq_report, verification, inputs) for a smash pair."""
    q_order = params.get("q_order")
    if (m_name, c_name) == ("qline-seq", "laurent-seq"):
        n = int(params.get("n", 3))
        q_act = None
        if q_order:
            q_order = int(q_order)
            field = default_field_for_order(q_order)
            q_act = field.zeta(field.param // q_order)
            params = dict(params, field=field, q=q_act ** (q_order // n))
        mseq, inputs = build_qline_sequence(params, D)
        c, cinputs = build_laurent_sequence(params, D)
        field, q = resolve_q(params, n)
        if q_order:
            inputs["mutation"] = f"action scalar of order {q_order}"
        actions = qline_actions(mseq, c, q, q_action=q_act)
        inputs.update({f"c.{k}": v for k, v in cinputs.items()})
        out, eq, ver = smash_sequences(mseq, c, actions, D)
        return out, eq, ver, inputs
    if (m_name, c_name) == ("jordan-seq", "laurent-p-seq"):
        mseq, inputs = build_jordan_sequence(params, D)
        c, cinputs = build_laurent_sequence(params, D, p_version=True)
        actions = jordan_actions(mseq, c)
        inputs.update({f"c.{k}": v for k, v in cinputs.items()})
        out, eq, ver = smash_sequences(mseq, c, actions, D)
        return out, eq, ver, inputs
    raise KeyError(f"unknown smash pair ({m_name}, {c_name})")


def run_ttp(name, params, D):
    """(validation_report, flatness_report_or_None, inputs)."""
    if name == "smash-qline":
        n = int(params.get("n", 3))
        field, q = resolve_q(params, n)
        seq, inputs = build_qline_sequence(params, D)
        c, _ = build_laurent_sequence(params, D)
        actions = qline_actions(seq, c, q)
        t = smash_twisting(c.H, seq.Q, actions["Q"], D)
        rep = validate_twisting_map(t, D)
        X = seq.Q.free.gen(0)
        g, gi = c.H.free.gen(0), c.H.free.gen(1)
        flat = twisted_flatness_check(t, [X ** n], [g ** n, gi ** n], D)
        return rep, flat, inputs
    if name == "smash-jordan":
        p = int(params.get("p", 3))
        seq, inputs = build_jordan_sequence(params, D)
        c, _ = build_laurent_sequence(params, D, p_version=True)
        actions = jordan_actions(seq, c)
        t = smash_twisting(c.H, seq.Q, actions["Q"], D)
        rep = validate_twisting_map(t, D)
        x, y = seq.Q.free.gen(0), seq.Q.free.gen(1)
        g, gi = c.H.free.gen(0), c.H.free.gen(1)
        flat = twisted_flatness_check(t, [x ** p, y ** p], [g ** p, gi ** p], D)
        return rep, flat, inputs
    if name == "smash-qls":
        field = FieldSpec.rationals()
        m1 = field.from_int(-1)
        data = qls([[m1, m1], [m1, m1]], cutoff=D)
        qfree = FreeAlgebra(field, [Generator("X1", 1), Generator("X2", 1)])
        qrel = qfree.gen(0) * qfree.gen(1) - (qfree.gen(1) * qfree.gen(0)).scale(m1)
        Q = groebner_truncated(Presentation(qfree, [qrel]), D)
        hfree = FreeAlgebra(
            field,
            [Generator("g1", 1), Generator("h1", 1), Generator("g2", 1), Generator("h2", 1)],
        )
        rels = [
            hfree.gen(0) * hfree.gen(1) - hfree.one(),
            hfree.gen(1) * hfree.gen(0) - hfree.one(),
            hfree.gen(2) * hfree.gen(3) - hfree.one(),
            hfree.gen(3) * hfree.gen(2) - hfree.one(),
        ]
        for a in (0, 1):
            for b in (2, 3):
                rels.append(hfree.gen(a) * hfree.gen(b) - hfree.gen(b) * hfree.gen(a))
        halg = groebner_truncated(
            Presentation(hfree, rels, {i: field.one() for i in range(4)}), D
        )
        H = HopfPresented(halg, {i: GROUPLIKE for i in range(4)})
        images = {}
        qm = [[m1, m1], [m1, m1]]
        for i in range(2):
            for t in range(2):
                images[(2 * i, t)] = Q.free.gen(t).scale(qm[i][t])
                images[(2 * i + 1, t)] = Q.free.gen(t).scale(qm[i][t].inverse())
        act = PresentedHopfAction(H, Q, images)
        t = smash_twisting(H, Q, act, D)
        rep = validate_twisting_map(t, D)
        return rep, None, {"field": str(field), "theta": 2}
    if name in ("flip", "flip-bad"):
        n = int(params.get("n", 3))
        field, q = resolve_q(params, n)
        Q = _free_poly_algebra(field, [("X", 1)], cutoff=D)
        Halg = _laurent_hopf(field, ("g", "gi"), 1, D).algebra
        perturb = None
        if name == "flip-bad":
            perturb = (((0,), (0,)), field.from_int(2))  # scale tau(g (x) X)
        t = flip_twisting(Halg, Q, D, perturb=perturb)
        rep = validate_twisting_map(t, D)
        return rep, None, {"n": n, "field": str(field), "perturbed": name == "flip-bad"}
    raise KeyError(f"unknown twisting example {name!r}")
