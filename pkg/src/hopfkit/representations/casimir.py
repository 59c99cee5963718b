"""The G-function and the quantum Casimir operator on weight modules."""

from __future__ import annotations

from .. import linalg
from ..datum import check_nli
from ..engine.form import dual_bases
from ..errors import AuditFailure, CosetMismatch, NliFails, NoSolution, NotInCoset
from ..lattice import DegreeVector, solve_weight_difference


def q_alpha(datum, alpha):
    """prod_i q_ii^(n_i(n_i+1)) * prod_{i<j} (q_ij q_ji)^(n_i n_j) as a unit."""
    q = datum.q
    out = datum.space.unit_one()
    n = list(alpha)
    for i in range(datum.theta):
        if n[i]:
            out = out * q[i][i] ** (n[i] * (n[i] + 1))
        for j in range(i + 1, datum.theta):
            if n[i] and n[j]:
                out = out * (q[i][j] * q[j][i]) ** (n[i] * n[j])
    return out


class GFunction:
    """G on the coset anchor * <chi_1, ..., chi_theta>, normalized by G(anchor) = 1."""

    def __init__(self, handle, anchor, allow_degenerate=False):
        self.handle = handle
        self.anchor = anchor
        self.nli = check_nli(handle.datum)
        if not self.nli and not allow_degenerate:
            raise NliFails("the G-function needs N-linear independence of the chi_i; "
                           "pass allow_degenerate to evaluate anyway")
        self.degenerate = not self.nli

    def degree_of(self, chi):
        try:
            return solve_weight_difference(chi, self.anchor, self.handle.datum.chi)
        except NoSolution:
            raise NotInCoset(f"{chi} is not in the coset of {self.anchor}") from None

    def __call__(self, chi):
        d = self.handle.datum
        alpha = self.degree_of(chi)
        return self.anchor(d.K_alpha(alpha) * d.L_alpha(alpha)) * q_alpha(d, alpha)

    def recursion_holds(self, chi):
        """G(chi) = G(chi chi_i^-1) chi(K_i L_i) for every i."""
        d = self.handle.datum
        return all(self(chi) == self(chi * d.chi[i].inverse()) * chi(d.KL(i)) for i in range(d.theta))


def g_function(handle, anchor, allow_degenerate=False):
    return GFunction(handle, anchor, allow_degenerate)


def g_eval(G, chi):
    return G(chi)


# the Casimir Omega = sum_alpha sum_k S(x_alpha^k) y_alpha^k

def _apply_antipode_f_word(M, word, p, vec, coef):
    """S(F_c1 ... F_cn) = (-1)^n F_cn L_cn ... F_c1 L_c1 applied to vec in M^p."""
    d = M.handle.datum
    c = coef if len(word) % 2 == 0 else -coef
    for i in word:
        c = c * M.weights[p](d.L[i]).to_scalar()
        p, vec = M.apply("F", i, p, vec)
        if p is None:
            return None, None
    return p, [c * x for x in vec]


def _raising_degrees(M):
    """Degrees alpha for which some E_alpha can act nontrivially on M."""
    h = M.handle
    out = []
    alive = {p: M.basis_vectors(p) for p in range(len(M.weights)) if M.dims[p]}
    layer = {DegreeVector.zero(h.theta): alive}
    height = 0
    while layer:
        out.extend(layer)
        height += 1
        nxt = {}
        for alpha, spaces in layer.items():
            for i in range(h.theta):
                beta = alpha + DegreeVector.simple(h.theta, i)
                for p, vecs in spaces.items():
                    b = M.block("E", i, p)
                    if b is None:
                        continue
                    dst, B = b
                    imgs = [v for v in (linalg.matvec(B, v, h.space) for v in vecs) if any(v)]
                    if imgs:
                        R, _ = linalg.rref(imgs, M.dims[dst])
                        tgt = nxt.setdefault(beta, {})
                        if dst in tgt:
                            R, _ = linalg.rref(tgt[dst] + R, M.dims[dst])
                        tgt[dst] = R
        layer = nxt
    return sorted(set(out), key=lambda a: (a.height, a))


def omega_matrix(handle, M):
    """Matrix of Omega on M, block by weight (Omega preserves weights)."""
    sp = handle.space
    off = [0]
    for d in M.dims:
        off.append(off[-1] + d)
    Om = linalg.zeros(sp, M.dim, M.dim)
    degrees = _raising_degrees(M)
    duals = {a: dual_bases(handle, a) for a in degrees}
    for p in range(len(M.weights)):
        for col, v in enumerate(M.basis_vectors(p)):
            acc = {}
            for alpha in degrees:
                xs, ys = duals[alpha]
                for x, y in zip(xs, ys):
                    # y is an E-combination acting first
                    mid = {}
                    for w, c in y.items():
                        dst, out = M.apply_word("E", w, p, v)
                        if dst is not None:
                            _add(mid, dst, [c * t for t in out])
                    for (xw, xc) in x.items():
                        for q, vec in mid.items():
                            dst, out = _apply_antipode_f_word(M, xw, q, vec, xc)
                            if dst is not None:
                                _add(acc, dst, out)
            for dst, vec in acc.items():
                if dst != p:
                    if any(vec):
                        raise AuditFailure("Omega does not preserve weight spaces")
                    continue
                for r, t in enumerate(vec):
                    Om[off[p] + r][off[p] + col] = t
    return Om


def _add(acc, p, vec):
    if p in acc:
        acc[p] = [a + b for a, b in zip(acc[p], vec)]
    else:
        acc[p] = list(vec)


def _weight_diag(M, fn):
    sp = M.handle.space
    D = linalg.zeros(sp, M.dim, M.dim)
    k = 0
    for p, d in enumerate(M.dims):
        c = fn(M.weights[p])
        for _ in range(d):
            D[k][k] = c
            k += 1
    return D


def casimir_apply(handle, M, G):
    """Omega_G on M as a dense matrix; checks that it commutes with every E_i, F_i."""
    for w, d in zip(M.weights, M.dims):
        if d:
            try:
                G.degree_of(w)
            except NotInCoset:
                raise CosetMismatch(f"weight {w} of the module is outside the coset of {G.anchor}") from None
    Om = omega_matrix(handle, M)
    Gd = _weight_diag(M, lambda w: G(w).to_scalar())
    OG = linalg.matmul(Gd, Om, handle.space)
    for i in range(handle.theta):
        for kind in ("E", "F"):
            A = M.full_matrix(kind, i)
            if not linalg.equal(linalg.matmul(OG, A, handle.space), linalg.matmul(A, OG, handle.space)):
                raise AuditFailure(f"Omega_G does not commute with {kind}{i + 1}")
    return OG


def omega_commutation_check(handle, M, Om=None):
    """Omega E_i = (chi chi_i)(K_i L_i)^-1 E_i Omega and Omega F_i = chi(K_i L_i) F_i Omega
    on every weight space M^chi.  Returns a list of failures."""
    sp = handle.space
    d = handle.datum
    if Om is None:
        Om = omega_matrix(handle, M)
    fails = []
    for i in range(handle.theta):
        KL = d.KL(i)
        E = M.full_matrix("E", i)
        F = M.full_matrix("F", i)
        DE = _weight_diag(M, lambda w: (w * d.chi[i])(KL).inverse().to_scalar())
        DF = _weight_diag(M, lambda w: w(KL).to_scalar())
        lhs = linalg.matmul(Om, E, sp)
        rhs = linalg.matmul(linalg.matmul(E, Om, sp), DE, sp)
        if not linalg.equal(lhs, rhs):
            fails.append(f"Omega E{i + 1} relation fails")
        lhs = linalg.matmul(Om, F, sp)
        rhs = linalg.matmul(linalg.matmul(F, Om, sp), DF, sp)
        if not linalg.equal(lhs, rhs):
            fails.append(f"Omega F{i + 1} relation fails")
    return fails


def summand_eigenvalues(handle, M, report, G):
    """For each summand of a decomposition, Omega_G on the U-span of its
    singular vectors; returns [(m, eigenvalue or None, is_scalar)]."""
    from .modules import lowering_span

    OG = casimir_apply(handle, M, G)
    sp = handle.space
    off = [0]
    for dd in M.dims:
        off.append(off[-1] + dd)
    out = []
    for s in report.summands:
        val = G(s.highest_weight).to_scalar()
        p = M.index[s.highest_weight]
        ok = True
        for q, rows in lowering_span(M, p, s.singular_basis).items():
            for v in rows:
                full = [sp.zero()] * M.dim
                for r, t in enumerate(v):
                    full[off[q] + r] = t
                img = linalg.matvec(OG, full, sp)
                if any(a != val * b for a, b in zip(img, full)):
                    ok = False
        out.append((list(s.m), val, ok))
    return out


__all__ = ["GFunction", "g_function", "g_eval", "q_alpha", "omega_matrix", "casimir_apply",
           "omega_commutation_check", "summand_eigenvalues"]
