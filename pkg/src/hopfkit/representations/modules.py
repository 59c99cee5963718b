"""Weight modules over U: simple modules L(chi), truncated Verma modules,
tensor products, singular vectors and the decomposition into simples."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import linalg
from ..engine import MINUS, AlgebraHandle
from ..engine import words as W
from ..errors import (AuditFailure, ConnectedDiagram, DegreeCapExceeded, HandleMismatch, NoSolution,
                      NotDominant)
from ..lattice import Character, DegreeVector, solve_integer_system, solve_mod2, solve_weight_difference
from ..scalars import UnitScalar, unit_discrete_log


class WeightModule:
    """Finite family of weight spaces with block action matrices.

    ``blocks[(kind, i, src)] = (dst, matrix)`` with kind 'E' or 'F'; the
    matrix has dim(dst) rows and dim(src) columns.  Group elements act on
    weight space p by the scalar weights[p](g)."""

    def __init__(self, handle, weights, dims, blocks, labels=None):
        self.handle = handle
        self.weights = list(weights)
        self.dims = list(dims)
        self.blocks = {k: v for k, v in blocks.items() if not linalg.is_zero(v[1])}
        self.index = {w: p for p, w in enumerate(self.weights)}
        if len(self.index) != len(self.weights):
            raise ValueError("weights of a WeightModule must be distinct")
        self.labels = labels

    @property
    def dim(self):
        return sum(self.dims)

    def weight_dims(self):
        return {w: d for w, d in zip(self.weights, self.dims) if d}

    def block(self, kind, i, src):
        return self.blocks.get((kind, i, src))

    def target(self, kind, i, src):
        chi_i = self.handle.datum.chi[i]
        w = self.weights[src] * (chi_i if kind == "E" else chi_i.inverse())
        return self.index.get(w)

    def apply(self, kind, i, src, vec):
        """Apply E_i or F_i to a vector of weight space ``src``.

        Returns (dst, vector) or (None, None) when the image is zero."""
        b = self.blocks.get((kind, i, src))
        if b is None:
            return None, None
        dst, M = b
        return dst, linalg.matvec(M, vec, self.handle.space)

    def apply_word(self, kind, word, src, vec):
        """Apply X_{w_1} ... X_{w_n}; the last letter acts first."""
        p, v = src, vec
        for i in reversed(word):
            p, v = self.apply(kind, i, p, v)
            if p is None:
                return None, None
        return p, v

    def group_scalar(self, g, p):
        return self.weights[p](g).to_scalar()

    def basis_vectors(self, p):
        return linalg.identity(self.handle.space, self.dims[p])

    def full_matrix(self, kind, i):
        """Dense matrix of E_i or F_i on the whole module."""
        off = [0]
        for d in self.dims:
            off.append(off[-1] + d)
        M = linalg.zeros(self.handle.space, self.dim, self.dim)
        for (k, j, src), (dst, B) in self.blocks.items():
            if k != kind or j != i:
                continue
            for r, row in enumerate(B):
                for c, x in enumerate(row):
                    M[off[dst] + r][off[src] + c] = x
        return M

    def audit_relations(self):
        """Check every defining relation of U as an exact matrix identity.

        Returns a list of failure messages (empty when all relations hold)."""
        h = self.handle
        sp = h.space
        d = h.datum
        fails = []
        for (kind, i, src), (dst, _) in self.blocks.items():
            if dst != self.target(kind, i, src):
                fails.append(f"{kind}{i + 1} does not shift weight {src} by chi_{i + 1}")
        serre = {"E": h.serre_generators("+"), "F": h.serre_generators("-")}
        for p in range(len(self.weights)):
            if not self.dims[p]:
                continue
            chi = self.weights[p]
            for v in self.basis_vectors(p):
                for i in range(h.theta):
                    for j in range(h.theta):
                        lhs = self._combo(p, v, [(("E", i), ("F", j), sp.one()), (("F", j), ("E", i), -sp.one())])
                        if i == j:
                            c = h.ell[i] * (chi(d.K[i]).to_scalar() - chi(d.L[i]).inverse().to_scalar())
                            lhs = _sub_vec(lhs, {p: [c * x for x in v]})
                        if any(any(x for x in vec) for vec in lhs.values()):
                            fails.append(f"E{i + 1}F{j + 1} - F{j + 1}E{i + 1} fails on weight {p}")
                for kind in ("E", "F"):
                    for deg, el in serre[kind]:
                        acc = {}
                        for w, c in el.items():
                            dst, out = self.apply_word(kind, w, p, v)
                            if dst is not None:
                                _add_vec(acc, dst, [c * x for x in out])
                        if any(any(x for x in vec) for vec in acc.values()):
                            fails.append(f"{kind}-Serre relation of degree {list(deg)} fails on weight {p}")
        return fails

    def _combo(self, p, v, terms):
        acc = {}
        for (k1, i1), (k2, i2), c in terms:
            dst, out = self.apply(k2, i2, p, v)
            if dst is None:
                continue
            dst, out = self.apply(k1, i1, dst, out)
            if dst is None:
                continue
            _add_vec(acc, dst, [c * x for x in out])
        return acc


def _add_vec(acc, p, vec):
    if p in acc:
        acc[p] = [a + b for a, b in zip(acc[p], vec)]
    else:
        acc[p] = list(vec)


def _sub_vec(acc, other):
    out = dict(acc)
    for p, vec in other.items():
        _add_vec(out, p, [-x for x in vec])
    return out


class HighestWeightModule(WeightModule):
    """A WeightModule generated by a highest weight vector (weight index 0)."""

    def __init__(self, handle, chi, layers, dims, blocks, tag, m=None):
        weights = [chi * handle.datum.chi_alpha(a).inverse() for a in layers]
        super().__init__(handle, weights, dims, blocks, labels=list(layers))
        self.highest_weight = chi
        self.cyclic_index = 0
        self.tag = tag
        self.m = m

    def layer_dims(self):
        return {tuple(a): d for a, d in zip(self.labels, self.dims) if d}


# dominance

def is_dominant(handle, chi):
    """m with chi(K_i L_i) = q_ii^m_i, all m_i >= 0, or None."""
    d = handle.datum
    m = []
    for i in range(d.theta):
        k = unit_discrete_log(d.q[i][i], chi(d.KL(i)))
        if k is None or k < 0:
            return None
        m.append(k)
    return m


def dominant_character(handle, m):
    """A character chi with chi(K_i L_i) = q_ii^m_i for the given m."""
    d = handle.datum
    if len(m) != d.theta or any(k < 0 for k in m):
        raise NotDominant(f"m = {list(m)} is not in N^{d.theta}")
    sp = d.space
    r = d.group.rank
    A = [list(d.KL(i).exponents) for i in range(d.theta)]
    cols = []
    for c in range(sp.m):
        b = [m[i] * d.q[i][i].exponents[c] for i in range(d.theta)]
        x = solve_integer_system(A, b)
        if x is None:
            raise NotDominant(f"no character with chi(K_i L_i) = q_ii^m_i for m = {list(m)}")
        cols.append(x)
    signs = solve_mod2(A, [m[i] * (0 if d.q[i][i].sign == 1 else 1) for i in range(d.theta)])
    if signs is None:
        raise NotDominant(f"sign constraints have no solution for m = {list(m)}")
    values = [UnitScalar(sp, -1 if signs[k] else 1, [cols[c][k] for c in range(sp.m)]) for k in range(r)]
    chi = Character(d.group, values, sp)
    assert is_dominant(handle, chi) == list(m)
    return chi


# layered construction shared by L(chi) and truncated Verma modules

def _quotient_layer(handle, alpha, ideal_rows):
    """Canonical F-words of degree alpha modulo the span of ``ideal_rows``.

    Returns (basis words, map canonical word -> {basis word: coef})."""
    canon = handle.graded_basis(MINUS, alpha).words
    pivots = {}
    for row in ideal_rows:
        row = dict(row)
        while True:
            hits = [k for k in row if k in pivots]
            if not hits:
                break
            k = max(hits)
            c = row[k]
            for w2, c2 in pivots[k].items():
                W.add_to(row, w2, -(c * c2))
        if row:
            lead = max(row)
            inv = row[lead].inverse()
            pivots[lead] = {w: c * inv for w, c in row.items()}
    red = {}
    for w in sorted(pivots):
        row = pivots[w]
        for k in [k for k in row if k != w and k in pivots]:
            c = row.pop(k)
            for w2, c2 in red[k].items():
                W.add_to(row, w2, c * c2)
        red[w] = {k: -c for k, c in row.items() if k != w}
    basis = [w for w in canon if w not in pivots]
    one = handle.space.one()
    proj = {w: {w: one} for w in basis}
    proj.update(red)
    return basis, proj


def _build_layers(handle, chi, m, depth):
    """Layers alpha -> (basis, proj) of U^- m_chi modulo sum U^- F_i^(m_i+1)."""
    theta = handle.theta
    zero = DegreeVector.zero(theta)
    layers = {zero: ([()], {(): {(): handle.space.one()}})}
    frontier = [zero]
    height = 0
    while frontier:
        height += 1
        if depth is not None and height > depth:
            break
        cands = sorted({a + DegreeVector.simple(theta, i) for a in frontier for i in range(theta)})
        nxt = []
        for alpha in cands:
            rows = []
            if m is not None:
                for i in range(theta):
                    k = m[i] + 1
                    if alpha[i] >= k:
                        beta = alpha - DegreeVector([k * (t == i) for t in range(theta)])
                        for u in handle.graded_basis(MINUS, beta).words:
                            rows.append(handle.reduce_word(MINUS, u + (i,) * k))
            basis, proj = _quotient_layer(handle, alpha, rows)
            if basis:
                layers[alpha] = (basis, proj)
                nxt.append(alpha)
        frontier = nxt
    return layers


def _project(handle, layers, alpha, comb):
    """Coordinates in layer alpha of a free F-combination of degree alpha."""
    basis, proj = layers[alpha]
    pos = {w: n for n, w in enumerate(basis)}
    vec = [handle.space.zero()] * len(basis)
    for w, c in handle.reduce(MINUS, comb).items():
        for b, c2 in proj[w].items():
            vec[pos[b]] = vec[pos[b]] + c * c2
    return vec


def _module_from_layers(handle, chi, layers, tag, m=None):
    d = handle.datum
    sp = handle.space
    order = sorted(layers, key=lambda a: (a.height, tuple(-x for x in a)))
    pos = {a: n for n, a in enumerate(order)}
    dims = [len(layers[a][0]) for a in order]
    blocks = {}
    theta = handle.theta
    for alpha in order:
        basis, _ = layers[alpha]
        src = pos[alpha]
        for i in range(theta):
            # F_i: prepend the letter
            up = alpha + DegreeVector.simple(theta, i)
            if up in layers:
                cols = [_project(handle, layers, up, {(i,) + x: sp.one()}) for x in basis]
                blocks[("F", i, src)] = (pos[up], linalg.transpose(cols, len(layers[up][0])))
            # E_i x m = l_i [ (chi chi_{alpha_i - alpha})(K_i) s_i(x) - chi(L_i)^-1 s'_i(x) ] m
            if alpha[i] == 0:
                continue
            down = alpha - DegreeVector.simple(theta, i)
            if down not in layers:
                continue
            wt = chi * d.chi_alpha(down).inverse()
            cK = wt(d.K[i]).to_scalar()
            cL = chi(d.L[i]).inverse().to_scalar()
            cols = []
            for x in basis:
                comb = {}
                W.combine(comb, W.s_word(handle.q, i, x, sp), cK)
                W.combine(comb, W.s_prime_word(handle.q, i, x, sp), -cL)
                vec = _project(handle, layers, down, comb)
                cols.append([handle.ell[i] * v for v in vec])
            blocks[("E", i, src)] = (pos[down], linalg.transpose(cols, len(layers[down][0])))
    return HighestWeightModule(handle, chi, order, dims, blocks, tag, m)


def simple_module(handle, chi, depth=None):
    """L(chi) = U^- / sum U^- F_i^(m_i + 1) with its full U-action."""
    m = is_dominant(handle, chi)
    if m is None:
        raise NotDominant(f"{chi} is not dominant")
    if not handle.cartan.finite_type and depth is None:
        raise DegreeCapExceeded("L(chi) for non-finite-type data needs an explicit depth")
    layers = _build_layers(handle, chi, m, depth)
    tag = "simple" if depth is None else f"simple_truncated({depth})"
    return _module_from_layers(handle, chi, layers, tag, m)


def simple_module_from_m(handle, m):
    return simple_module(handle, dominant_character(handle, m))


def verma_truncated(handle, chi, depth):
    if depth > handle.max_degree:
        raise DegreeCapExceeded(f"depth {depth} exceeds max_degree {handle.max_degree}")
    layers = _build_layers(handle, chi, None, depth)
    return _module_from_layers(handle, chi, layers, f"verma_truncated({depth})", is_dominant(handle, chi))


# tensor products

def tensor(handle, M, N):
    if M.handle is not handle or N.handle is not handle:
        raise HandleMismatch("modules belong to different algebra handles")
    d = handle.datum
    sp = handle.space
    groups = {}
    for p, chi in enumerate(M.weights):
        if not M.dims[p]:
            continue
        for r, psi in enumerate(N.weights):
            if not N.dims[r]:
                continue
            groups.setdefault(chi * psi, []).append((p, r))
    weights = sorted(groups, key=lambda w: min(groups[w]))
    offsets = {}
    dims = []
    for t, w in enumerate(weights):
        off = 0
        for (p, r) in groups[w]:
            offsets[(p, r)] = (t, off)
            off += M.dims[p] * N.dims[r]
        dims.append(off)
    index = {w: t for t, w in enumerate(weights)}
    blocks = {}

    def put(kind, i, src_t, dst_t, r0, c0, sub):
        key = (kind, i, src_t)
        if key not in blocks:
            blocks[key] = (dst_t, linalg.zeros(sp, dims[dst_t], dims[src_t]))
        B = blocks[key][1]
        for a, row in enumerate(sub):
            for b, x in enumerate(row):
                if x:
                    B[r0 + a][c0 + b] = B[r0 + a][c0 + b] + x

    for (p, r), (t, off) in offsets.items():
        dm, dn = M.dims[p], N.dims[r]
        for i in range(handle.theta):
            for kind in ("E", "F"):
                shift = d.chi[i] if kind == "E" else d.chi[i].inverse()
                dst_t = index.get(weights[t] * shift)
                if dst_t is None:
                    continue
                # X acting on the right factor
                bN = N.block(kind, i, r)
                if bN is not None:
                    r2, BN = bN
                    c = M.weights[p](d.K[i]).to_scalar() if kind == "E" else sp.one()
                    sub = _kron(linalg.identity(sp, dm), BN, sp, c)
                    put(kind, i, t, dst_t, offsets[(p, r2)][1], off, sub)
                # X acting on the left factor
                bM = M.block(kind, i, p)
                if bM is not None:
                    p2, BM = bM
                    c = sp.one() if kind == "E" else N.weights[r](d.L[i]).inverse().to_scalar()
                    sub = _kron(BM, linalg.identity(sp, dn), sp, c)
                    put(kind, i, t, dst_t, offsets[(p2, r)][1], off, sub)
    return WeightModule(handle, weights, dims, blocks)


def _kron(A, B, sp, c):
    ra, ca = len(A), len(A[0]) if A else 0
    rb, cb = len(B), len(B[0]) if B else 0
    out = linalg.zeros(sp, ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if not a:
                continue
            a = a * c
            for k in range(rb):
                for l in range(cb):
                    if B[k][l]:
                        out[i * rb + k][j * cb + l] = a * B[k][l]
    return out


def direct_sum(handle, modules):
    """External direct sum of weight modules (weights must be disjoint or merge)."""
    sp = handle.space
    groups = {}
    for n, M in enumerate(modules):
        for p, w in enumerate(M.weights):
            if M.dims[p]:
                groups.setdefault(w, []).append((n, p))
    weights = list(groups)
    index = {w: t for t, w in enumerate(weights)}
    offs, dims = {}, []
    for t, w in enumerate(weights):
        off = 0
        for (n, p) in groups[w]:
            offs[(n, p)] = off
            off += modules[n].dims[p]
        dims.append(off)
    blocks = {}
    for n, M in enumerate(modules):
        for (kind, i, src), (dst, B) in M.blocks.items():
            ts, td = index[M.weights[src]], index[M.weights[dst]]
            key = (kind, i, ts)
            if key not in blocks:
                blocks[key] = (td, linalg.zeros(sp, dims[td], dims[ts]))
            T = blocks[key][1]
            r0, c0 = offs[(n, dst)], offs[(n, src)]
            for a, row in enumerate(B):
                for b, x in enumerate(row):
                    T[r0 + a][c0 + b] = x
    return WeightModule(handle, weights, dims, blocks)


# singular vectors and decomposition

def singular_vectors(M):
    """Per weight index, a basis of the common kernel of all E_i."""
    sp = M.handle.space
    out = {}
    for p, dim in enumerate(M.dims):
        if not dim:
            continue
        rows = []
        for i in range(M.handle.theta):
            b = M.block("E", i, p)
            if b is not None:
                rows.extend(b[1])
        ker = linalg.nullspace(rows, dim, sp)
        if ker:
            out[p] = ker
    return out


def lowering_span(M, p, vectors):
    """Per weight index, a spanning set of U^- applied to ``vectors`` in M^p."""
    spans = {p: [list(v) for v in vectors]}
    todo = [p]
    done = set()
    while todo:
        src = todo.pop()
        if src in done:
            continue
        done.add(src)
        basis = spans[src]
        R, _ = linalg.rref(basis, M.dims[src]) if basis else ([], [])
        spans[src] = R
        for i in range(M.handle.theta):
            b = M.block("F", i, src)
            if b is None:
                continue
            dst, B = b
            imgs = [linalg.matvec(B, v, M.handle.space) for v in R]
            imgs = [v for v in imgs if any(v)]
            if imgs:
                spans.setdefault(dst, []).extend(imgs)
                done.discard(dst)
                todo.append(dst)
    return {q: rows for q, rows in spans.items() if rows}


@dataclass
class Summand:
    highest_weight: Character
    m: list
    multiplicity: int
    dim_simple: int
    singular_basis: list = field(repr=False, default_factory=list)


@dataclass
class DecompositionReport:
    summands: list
    total_dim: int
    audit_sum: int
    direct: bool

    @property
    def audit_ok(self):
        return self.total_dim == self.audit_sum

    def multiset(self):
        return sorted((tuple(s.m), s.multiplicity) for s in self.summands)

    def to_dict(self):
        return {
            "summands": [
                {"highest_weight": [str(v) for v in s.highest_weight.values], "m": s.m,
                 "multiplicity": s.multiplicity, "dim": s.dim_simple}
                for s in self.summands
            ],
            "total_dim": self.total_dim,
            "audit_sum": self.audit_sum,
            "audit_ok": self.audit_ok,
            "direct": self.direct,
        }


def decompose(handle, M, check_direct=True):
    """Decompose a finite-dimensional module into simples L(chi)."""
    if M.handle is not handle:
        raise HandleMismatch("module belongs to a different algebra handle")
    sing = singular_vectors(M)
    summands = []
    audit = 0
    for p in sorted(sing, key=lambda p: (-len(sing[p]), p)):
        chi = M.weights[p]
        m = is_dominant(handle, chi)
        if m is None:
            raise AuditFailure(f"singular vector of non-dominant weight {chi}")
        L = simple_module(handle, chi)
        mult = len(sing[p])
        summands.append(Summand(chi, m, mult, L.dim, sing[p]))
        audit += mult * L.dim
    summands.sort(key=lambda s: (-sum(s.m), s.m))
    direct = True
    if check_direct:
        total = {}
        for p, vecs in sing.items():
            for v in vecs:
                for q, rows in lowering_span(M, p, [v]).items():
                    total.setdefault(q, []).extend(rows)
        ranks = sum(linalg.rank(rows) for rows in total.values())
        direct = ranks == audit
    report = DecompositionReport(summands, M.dim, audit, direct)
    if not report.audit_ok or not direct:
        raise AuditFailure(
            f"decomposition audit failed: dim M = {M.dim}, sum mult*dim L = {audit}, direct = {direct}; "
            f"summands {[(s.m, s.multiplicity, s.dim_simple) for s in summands]}")
    return report


def is_integrable(M):
    """Every E_i and F_i acts nilpotently."""
    sp = M.handle.space
    n = len(M.weights)
    for kind in ("E", "F"):
        for i in range(M.handle.theta):
            for p in range(n):
                if not M.dims[p]:
                    continue
                cur = {p: M.basis_vectors(p)}
                for _ in range(n + 1):
                    nxt = {}
                    for src, vecs in cur.items():
                        b = M.block(kind, i, src)
                        if b is None:
                            continue
                        dst, B = b
                        imgs = [linalg.matvec(B, v, sp) for v in vecs]
                        imgs = [v for v in imgs if any(v)]
                        if imgs:
                            nxt.setdefault(dst, []).extend(imgs)
                    cur = nxt
                    if not cur:
                        break
                if cur:
                    return False
    return True


def component_factorization_check(handle, chi):
    """Compare L(chi) with L_{U_J}(chi) x L_{U'}(chi) for the first Cartan
    component J and the rest."""
    comps = handle.cartan.components
    if len(comps) < 2:
        raise ConnectedDiagram("the Cartan matrix is indecomposable")
    J = comps[0]
    rest = [i for c in comps[1:] for i in c]
    full = simple_module(handle, chi)
    hJ = AlgebraHandle(handle.datum.sub_datum(J), handle.max_degree)
    hR = AlgebraHandle(handle.datum.sub_datum(rest), handle.max_degree)
    LJ = simple_module(hJ, chi)
    LR = simple_module(hR, chi)
    expected = {}
    for a, da in LJ.layer_dims().items():
        for b, db in LR.layer_dims().items():
            alpha = [0] * handle.theta
            for k, i in enumerate(J):
                alpha[i] = a[k]
            for k, i in enumerate(rest):
                alpha[i] = b[k]
            expected[tuple(alpha)] = expected.get(tuple(alpha), 0) + da * db
    ok = expected == full.layer_dims() and full.dim == LJ.dim * LR.dim
    return {
        "component": [i + 1 for i in J],
        "dim": full.dim,
        "dim_J": LJ.dim,
        "dim_rest": LR.dim,
        "weights_factor": expected == full.layer_dims(),
        "ok": ok,
    }


def weight_degree(handle, M, p, anchor):
    """alpha with M.weights[p] = anchor * chi_alpha, or None."""
    try:
        return solve_weight_difference(M.weights[p], anchor, handle.datum.chi)
    except NoSolution:
        return None
