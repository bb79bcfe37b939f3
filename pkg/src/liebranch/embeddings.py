"""Distinguished reductive subalgebras of the exceptional Lie algebras.

Each catalog entry describes one conjugacy class of maximal connected
reductive subgroups H of a simple exceptional group G, in one of five
shapes:

- ``subsystem``: H is generated by root subspaces of G; its simple roots
  are roots of G (the classes produced by removing one node from the
  extended Dynkin diagram).
- ``levi``: H is a maximal Levi subgroup, semisimple part times a
  one-dimensional central torus; a coweight vector records the torus.
- ``folded``: the simple generators of H are signed sums of root vectors
  of G (fixed points of a diagram involution).
- ``derived``: H is assembled from a previously defined embedding plus
  its centralizer (used for the rank-5 product inside the rank-7 group).
- ``typeonly``: only the isomorphism type is known to the catalog; these
  entries carry enough data for dimension counts but no generators.

Generator conventions: for each simple root j of H the entry provides
``x_j`` (raising), ``y_j`` (lowering) and ``h_j = [x_j, y_j]`` in the
ambient Chevalley basis, satisfying ``[h_i, x_j] = C_H[i][j] x_j``.
Weight restriction is the linear map given by pairing with the ``h_j``
(plus the torus coweight for Levi entries).
"""

from __future__ import annotations

import importlib.resources
import os
import re
from fractions import Fraction
from functools import lru_cache

from .chevalley import chevalley_basis, neg
from .linalg import SpanQ, clear_denominators
from .rootsys import (
    LieError,
    ProductSystem,
    SimpleType,
    TypeSpec,
    cartan_data,
    diagram_components,
    component_type,
    root_system,
)

KINDS = ("subsystem", "levi", "folded", "derived", "typeonly")


def _pairing_matrix(rs, betas):
    """M[i][j] = <beta_j, beta_i^vee> for roots given in root coordinates."""
    n = len(betas)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        ni = rs.norm2(betas[i])
        for j in range(n):
            v = 2 * rs.inner_rr(betas[j], betas[i])
            assert v % ni == 0
            M[i][j] = v // ni
    return M


def bourbaki_order(rs, betas):
    """Order a connected set of mutually-pairing roots to match the
    standard Cartan matrix of its type; returns (SimpleType, ordered list)."""
    M = _pairing_matrix(rs, betas)
    d_sub = [rs.norm2(b) // 2 for b in betas]
    comps = diagram_components(M)
    if len(comps) != 1:
        raise LieError("bourbaki_order wants a connected set")
    t = component_type(M, d_sub, list(range(len(betas))))
    Ct, _ = cartan_data(t)
    n = len(betas)
    order = [None] * n
    used = [False] * n

    def place(k):
        if k == n:
            return True
        for cand in range(n):
            if used[cand]:
                continue
            ok = True
            for m in range(k):
                if M[order[m]][cand] != Ct[m][k] or M[cand][order[m]] != Ct[k][m]:
                    ok = False
                    break
            if ok:
                order[k] = cand
                used[cand] = True
                if place(k + 1):
                    return True
                used[cand] = False
                order[k] = None
        return False

    if not place(0):
        raise LieError(f"cannot order diagram as {t}")
    return t, [betas[i] for i in order]


def subsystem_simple_images(g: SimpleType, node: int):
    """Simple-root images for the subsystem obtained by dropping ``node``
    (1-based) from the extended diagram of g.

    The subsystem's positive roots are taken inside the positive roots of
    g; the returned factors are Bourbaki-ordered, largest rank first.
    """
    rs = root_system(g)
    r = rs.rank
    if not 1 <= node <= r:
        raise LieError(f"node {node} out of range for {g}")
    # the subsystem is the additive closure of the generators and their
    # negatives inside the ambient roots (the lattice span would be too
    # big: long roots can span short ones)
    gens = [rs.highest_root] + [
        tuple(1 if k == j else 0 for k in range(r)) for j in range(r) if j != node - 1
    ]
    sub = set(gens) | {tuple(-x for x in a) for a in gens}
    grew = True
    while grew:
        grew = False
        for a in list(sub):
            for b in list(sub):
                s = tuple(x + y for x, y in zip(a, b))
                if s not in sub and rs.is_root(s):
                    sub.add(s)
                    grew = True
    pos = sorted(a for a in sub if a in rs.index)
    pos_set = set(pos)
    simples = []
    for a in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos if b != a
        )
        if not decomposable:
            simples.append(a)
    # split into connected components and order each
    Mp = _pairing_matrix(rs, simples)
    factors = []
    for comp in diagram_components(Mp):
        t, ordered = bourbaki_order(rs, [simples[i] for i in comp])
        factors.append((t, ordered))
    factors.sort(key=lambda f: (-f[0].rank, f[0].family))
    return factors, pos


class Embedding:
    """One catalog entry: a reductive subalgebra of an exceptional algebra."""

    def __init__(self, ambient: SimpleType, name: str, kind: str):
        self.ambient = ambient
        self.name = name
        self.kind = kind
        self.spec = TypeSpec.parse(name)
        self.hsys = ProductSystem(self.spec) if self.spec.factors else None
        self.node = None  # extended-diagram removal node (subsystem)
        self.omit = None  # omitted node (levi)
        self.coweight = None  # torus pairing row (levi)
        self.simple_images = None  # list of G-roots, one per H node
        self.gen_terms = None  # folded: list of [(sign, G-root), ...]
        self.inner = None  # derived: (name, ambient-name)
        self.via_omit = None  # derived: node of G whose Levi hosts inner
        self._built = None

    # -- bookkeeping -------------------------------------------------------

    @property
    def rank_ss(self):
        return self.spec.rank_ss

    def borel_dim(self):
        """Dimension of a Borel subgroup of H."""
        n = self.spec.torus
        for f in self.spec.factors:
            n += root_system(f).n_pos + f.rank
        return n

    def h_dim(self):
        n = self.spec.torus
        for f in self.spec.factors:
            n += 2 * root_system(f).n_pos + f.rank
        return n

    def __repr__(self):
        return f"Embedding({self.name} < {self.ambient}, {self.kind})"

    # -- generator construction ---------------------------------------------

    def _build(self):
        if self._built is not None:
            return self._built
        if self.kind == "typeonly":
            raise LieError(f"{self.name} < {self.ambient}: no generators known")
        cb = chevalley_basis(self.ambient)
        rs = cb.rs
        if self.kind in ("subsystem", "levi"):
            betas = self.simple_images
            xg = [cb.x(b) for b in betas]
            yg = [cb.x(neg(b)) for b in betas]
            hg = [cb.h_coroot(b) for b in betas]
            rows = [rs.coroot(b) for b in betas]
        elif self.kind == "folded":
            xg, yg, hg, rows = [], [], [], []
            for terms in self.gen_terms:
                x, y, h = {}, {}, {}
                row = [0] * rs.rank
                for s, gr in terms:
                    x[cb.root_index[gr]] = s
                    y[cb.root_index[neg(gr)]] = s
                    for k, c in cb.h_coroot(gr).items():
                        h[k] = h.get(k, 0) + c
                    cr = rs.coroot(gr)
                    row = [a + b for a, b in zip(row, cr)]
                xg.append(x)
                yg.append(y)
                hg.append(h)
                rows.append(tuple(row))
        elif self.kind == "derived":
            xg, yg, hg, rows = self._build_derived(cb)
        else:
            raise LieError(f"unknown kind {self.kind}")
        self._built = (xg, yg, hg, [tuple(r) for r in rows])
        return self._built

    def _build_derived(self, cb):
        rs = cb.rs
        inner = self.inner_embedding
        pad = rs.rank - root_system(inner.ambient).rank
        assert self.via_omit == rs.rank  # inner lives in the Levi of the last node

        def lift_root(a):
            return tuple(a) + (0,) * pad

        ixg, iyg, ihg, irows = inner._build()

        def lift_elem(u, inner_cb):
            out = {}
            for k, c in u.items():
                a = inner_cb.signed_root_of_index(k)
                if a is None:
                    out[2 * cb.m + (k - 2 * inner_cb.m)] = c
                else:
                    out[cb.root_index[lift_root(a)]] = c
            return out

        inner_cb = chevalley_basis(inner.ambient)
        xg = [lift_elem(u, inner_cb) for u in ixg]
        yg = [lift_elem(u, inner_cb) for u in iyg]
        hg = [lift_elem(u, inner_cb) for u in ihg]
        rows = [tuple(r) + (0,) * pad for r in irows]

        # centralizing sl2: raising vector in the +1 block of the grading by
        # the omitted node's coefficient, annihilated by all inner generators
        o = self.via_omit - 1
        plus_idx = [cb.root_index[a] for a in rs.positive_roots if a[o] == 1]
        minus_idx = [cb.root_index[neg(a)] for a in rs.positive_roots if a[o] == 1]

        def invariant_line(block):
            # solve [gen, v] = 0 for v in the span of the block indices; the
            # bracket of a Levi element with the block stays in the block
            pos = {k: i for i, k in enumerate(block)}
            nb = len(block)
            span = SpanQ(nb)
            for gen in xg + yg:
                cols = []
                for k in block:
                    img = cb.bracket(gen, {k: 1})
                    assert all(kk in pos for kk in img), self.name
                    cols.append(img)
                for i, k in enumerate(block):
                    span.add([cols[c].get(k, 0) for c in range(nb)])
            free = span.nonpivot_columns()
            if len(free) != 1:
                raise LieError(
                    f"{self.name}: invariant block rank unexpected ({len(free)})"
                )
            vec = [Fraction(0)] * nb
            vec[free[0]] = Fraction(1)
            for row, p in zip(span.rows, span.pivots):
                vec[p] = -row[free[0]]
            ints = clear_denominators(vec)
            return {k: c for k, c in zip(block, ints) if c}

        E = invariant_line(plus_idx)
        F = invariant_line(minus_idx)
        H0 = cb.bracket(E, F)
        assert all(k >= 2 * cb.m for k in H0), "sl2 coroot not toral"
        HE = cb.bracket(H0, E)
        kappa = None
        for k, c in E.items():
            kappa = Fraction(HE.get(k, 0), c)
            break
        assert kappa and kappa > 0
        for k, c in E.items():
            assert Fraction(HE.get(k, 0), c) == kappa
        scale = 2 / kappa
        F = {k: c * scale for k, c in F.items()}
        H = cb.bracket(E, F)
        hrow = [H.get(2 * cb.m + j, 0) for j in range(rs.rank)]
        assert all(Fraction(v).denominator == 1 for v in hrow)
        hrow = [int(v) for v in hrow]
        H = {2 * cb.m + j: v for j, v in enumerate(hrow) if v}
        # the first factor of the product is the new sl2
        return [E] + xg, [F] + yg, [H] + hg, [tuple(hrow)] + rows

    @property
    def inner_embedding(self):
        if self._inner_ref is None:
            raise LieError(f"{self.name}: inner embedding not resolved")
        return self._inner_ref

    _inner_ref = None

    def x_gens(self):
        return self._build()[0]

    def y_gens(self):
        return self._build()[1]

    def h_gens(self):
        return self._build()[2]

    def restriction_rows(self):
        return self._build()[3]

    # -- weight restriction ---------------------------------------------------

    def restrict_weight(self, mu):
        """H-weight (and torus charge, for entries with a torus) of a
        G-weight given in fundamental-weight coordinates."""
        rows = self.restriction_rows()
        lam = tuple(sum(r[k] * mu[k] for k in range(len(mu))) for r in rows)
        charge = None
        if self.coweight is not None:
            charge = sum(c * m for c, m in zip(self.coweight, mu))
        return lam, charge

    # -- subalgebra data -------------------------------------------------------

    def h_positive_roots_in_g(self):
        """For subsystem and levi entries: positive roots of H as G-roots."""
        if self.kind == "levi":
            rs = root_system(self.ambient)
            o = self.omit - 1
            return [a for a in rs.positive_roots if a[o] == 0]
        if self.kind != "subsystem":
            raise LieError(f"{self.name}: root subsystem not defined")
        rs = root_system(self.ambient)
        betas = self.simple_images
        out = []
        at = 0
        for f in self.spec.factors:
            frs = root_system(f)
            fb = betas[at : at + f.rank]
            at += f.rank
            for a in frs.positive_roots:
                img = tuple(
                    sum(c * b[k] for c, b in zip(a, fb)) for k in range(rs.rank)
                )
                assert img in rs.index, (self.name, a)
                out.append(img)
        return out

    def lie_h_vectors(self):
        """Sparse vectors spanning Lie(H) inside the ambient algebra."""
        cb = chevalley_basis(self.ambient)
        if self.kind in ("subsystem", "levi"):
            out = [cb.h(j) for j in range(cb.rank)]
            for a in self.h_positive_roots_in_g():
                out.append(cb.x(a))
                out.append(cb.x(neg(a)))
            return out
        out = list(self.h_gens())
        pos, negs = self._folded_root_vectors()
        out.extend(pos)
        out.extend(negs)
        return out

    def borel_h_vectors(self):
        """Sparse vectors spanning a Borel subalgebra of H."""
        cb = chevalley_basis(self.ambient)
        if self.kind in ("subsystem", "levi"):
            out = [cb.h(j) for j in range(cb.rank)]
            out.extend(cb.x(a) for a in self.h_positive_roots_in_g())
            return out
        out = list(self.h_gens())
        pos, _ = self._folded_root_vectors()
        out.extend(pos)
        return out

    def _folded_root_vectors(self):
        """Raising/lowering vectors for every positive root of H, built by
        bracketing up from the simple generators (folded/derived kinds)."""
        cb = chevalley_basis(self.ambient)
        xg, yg, _, _ = self._build()
        pos_out, neg_out = [], []
        at = 0
        for f in self.spec.factors:
            frs = root_system(f)
            fx = xg[at : at + f.rank]
            fy = yg[at : at + f.rank]
            at += f.rank
            built_p = {}
            built_n = {}
            for a in frs.positive_roots:
                if sum(a) == 1:
                    j = a.index(1)
                    built_p[a] = fx[j]
                    built_n[a] = fy[j]
                    continue
                for i in range(f.rank):
                    b = list(a)
                    b[i] -= 1
                    b = tuple(b)
                    if min(b) >= 0 and b in built_p:
                        vp = cb.bracket(fx[i], built_p[b])
                        vn = cb.bracket(fy[i], built_n[b])
                        assert vp and vn, (self.name, a)
                        built_p[a] = vp
                        built_n[a] = vn
                        break
                else:
                    raise LieError(f"{self.name}: cannot reach root {a}")
            pos_out.extend(built_p[a] for a in frs.positive_roots)
            neg_out.extend(built_n[a] for a in frs.positive_roots)
        return pos_out, neg_out

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Check the defining relations of the generators; raises on failure."""
        if self.kind == "typeonly":
            return
        cb = chevalley_basis(self.ambient)
        xg, yg, hg, rows = self._build()
        n = self.rank_ss
        CH = self._h_cartan_matrix()
        for i in range(n):
            assert cb.bracket(xg[i], yg[i]) == _as_exact(hg[i]), (self.name, i)
            for j in range(n):
                got = cb.bracket(hg[i], xg[j])
                want = _scale(xg[j], CH[i][j])
                assert _as_exact(got) == _as_exact(want), (self.name, i, j)
                if i != j:
                    assert not cb.bracket(xg[i], yg[j]), (self.name, i, j)
                    # Serre relation on the raising generators
                    v = xg[j]
                    for _ in range(1 - CH[i][j]):
                        v = cb.bracket(xg[i], v)
                    assert not v, (self.name, i, j)
        self._check_span_dimension()

    def _h_cartan_matrix(self):
        n = self.rank_ss
        CH = [[0] * n for _ in range(n)]
        at = 0
        for f in self.spec.factors:
            Cf, _ = cartan_data(f)
            for i in range(f.rank):
                for j in range(f.rank):
                    CH[at + i][at + j] = Cf[i][j]
            at += f.rank
        return CH

    def _check_span_dimension(self):
        cb = chevalley_basis(self.ambient)
        span = SpanQ(cb.dim)
        count = 0
        for v in self.lie_h_vectors():
            if span.add(cb.to_dense(v)):
                count += 1
        want = self.h_dim() - self.spec.torus + (
            cb.rank - self.rank_ss if self.kind in ("subsystem", "levi") else 0
        )
        assert span.rank == want, (self.name, span.rank, want)


def _as_exact(u):
    return {k: Fraction(c) for k, c in u.items() if c}


def _scale(u, c):
    return {k: v * c for k, v in u.items() if v * c}


# -- data file parsing ---------------------------------------------------------


_ROOT_TUPLE_RE = re.compile(r"^\(([-0-9,\s]+)\)$")


def _int_directive(text):
    try:
        return int(text)
    except ValueError:
        raise LieError(f"expected an integer, got {text!r}") from None


def _parse_root(tok, rank):
    tok = tok.strip()
    m = _ROOT_TUPLE_RE.match(tok)
    if m:
        parts = [p.strip() for p in m.group(1).split(",")]
        vals = tuple(int(p) for p in parts)
        if len(vals) != rank:
            raise LieError(f"root tuple {tok} has wrong length")
        return vals
    m = re.match(r"^a([0-9]+)$", tok)
    if m:
        j = int(m.group(1))
        if not 1 <= j <= rank:
            raise LieError(f"simple root index {j} out of range")
        return tuple(1 if k == j - 1 else 0 for k in range(rank))
    raise LieError(f"cannot parse root token {tok!r}")


def parse_embeddings(text: str):
    """Parse the embedding catalog file into Embedding objects (in order)."""
    records = []
    cur = None
    cur_roots = {}
    cur_chev = {}
    saw_format = False

    def finish():
        nonlocal cur, cur_roots, cur_chev
        if cur is None:
            return
        if cur_roots:
            n = cur.rank_ss
            if sorted(cur_roots) != list(range(1, n + 1)):
                raise LieError(f"{cur.name}: root lines must cover 1..{n}")
            cur.simple_images = [cur_roots[j] for j in range(1, n + 1)]
        if cur_chev:
            n = cur.rank_ss
            if sorted(cur_chev) != list(range(1, n + 1)):
                raise LieError(f"{cur.name}: chev lines must cover 1..{n}")
            cur.gen_terms = [cur_chev[j] for j in range(1, n + 1)]
        records.append(cur)
        cur, cur_roots, cur_chev = None, {}, {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "format":
                if rest != "1":
                    raise LieError(f"unsupported format {rest!r}")
                saw_format = True
            elif head == "embed":
                finish()
                m = re.match(r"^(\S+)\s+in\s+([A-G][0-9])$", rest)
                if not m:
                    raise LieError(f"bad embed line {line!r}")
                amb = SimpleType(m.group(2)[0], int(m.group(2)[1]))
                cur = Embedding(amb, m.group(1), kind="typeonly")
            elif cur is None:
                raise LieError(f"directive {head!r} outside a record")
            elif head == "kind":
                if rest not in KINDS:
                    raise LieError(f"unknown kind {rest!r}")
                cur.kind = rest
            elif head == "node":
                cur.node = _int_directive(rest)
            elif head == "omit":
                cur.omit = _int_directive(rest)
            elif head == "coweight":
                cur.coweight = _parse_root(rest, cur.ambient.rank)
            elif head == "root":
                m = re.match(r"^([0-9]+)\s*=\s*(.+)$", rest)
                if not m:
                    raise LieError(f"bad root line {line!r}")
                cur_roots[int(m.group(1))] = _parse_root(
                    m.group(2), cur.ambient.rank
                )
            elif head == "chev":
                m = re.match(r"^([0-9]+)\s*=\s*(.+)$", rest)
                if not m:
                    raise LieError(f"bad chev line {line!r}")
                terms = []
                for tok in m.group(2).split():
                    sign = 1
                    if tok[0] == "+":
                        tok = tok[1:]
                    elif tok[0] == "-":
                        sign = -1
                        tok = tok[1:]
                    terms.append((sign, _parse_root(tok, cur.ambient.rank)))
                cur_chev[int(m.group(1))] = terms
            elif head == "inner":
                m = re.match(r"^(\S+)\s+in\s+([A-G][0-9])$", rest)
                if not m:
                    raise LieError(f"bad inner line {line!r}")
                cur.inner = (m.group(1), m.group(2))
            elif head == "via":
                m = re.match(r"^omit\s+([0-9]+)$", rest)
                if not m:
                    raise LieError(f"bad via line {line!r}")
                cur.via_omit = int(m.group(1))
            else:
                raise LieError(f"unknown directive {head!r}")
        except LieError as e:
            raise LieError(f"embeddings data line {lineno}: {e}") from None
    finish()
    if not saw_format:
        raise LieError("embeddings data: missing format line")
    return records


class Catalog:
    def __init__(self, records):
        self.records = records
        self.by_key = {}
        self.by_g = {}
        for r in records:
            key = (str(r.ambient), r.name)
            if key in self.by_key:
                raise LieError(f"duplicate catalog entry {key}")
            self.by_key[key] = r
            self.by_g.setdefault(str(r.ambient), []).append(r)
        # resolve derived references and fill subsystem images
        for r in records:
            if r.kind == "derived":
                hname, gname = r.inner
                ref = self.by_key.get((gname, hname))
                if ref is None:
                    raise LieError(f"{r.name}: unknown inner embedding {r.inner}")
                r._inner_ref = ref
            if r.kind == "subsystem" and r.simple_images is None:
                factors, _ = subsystem_simple_images(r.ambient, r.node)
                # arrange derived factors to follow the declared factor order
                pool = list(factors)
                images = []
                for want in r.spec.factors:
                    hit = next((f for f in pool if f[0] == want), None)
                    if hit is None:
                        got = "x".join(str(t) for t, _ in factors)
                        raise LieError(
                            f"{r.name}: removal node {r.node} gives {got}"
                        )
                    pool.remove(hit)
                    images.extend(hit[1])
                if pool:
                    got = "x".join(str(t) for t, _ in factors)
                    raise LieError(f"{r.name}: removal node {r.node} gives {got}")
                r.simple_images = images

    def get(self, gname: str, hname: str) -> Embedding:
        key = (gname, hname)
        if key not in self.by_key:
            raise LieError(f"no catalog entry for {hname} in {gname}")
        return self.by_key[key]

    def entries(self, gname: str):
        if gname not in self.by_g:
            raise LieError(f"no catalog entries for {gname}")
        return list(self.by_g[gname])

    def cross_check_subsystems(self):
        """Entries with explicit root images must describe the same root
        subsystem as their extended-diagram removal node."""
        problems = []
        for r in self.records:
            if r.kind != "subsystem" or r.node is None:
                continue
            factors, _ = subsystem_simple_images(r.ambient, r.node)
            derived = sorted(b for _, ordered in factors for b in ordered)
            explicit = sorted(r.simple_images)
            if derived != explicit:
                problems.append((str(r.ambient), r.name, derived, explicit))
        return problems


def data_dir_default():
    return str(importlib.resources.files("liebranch") / "data")


@lru_cache(maxsize=None)
def load_catalog(data_dir=None) -> Catalog:
    if data_dir is None:
        data_dir = os.environ.get("LIEBRANCH_DATA") or data_dir_default()
    path = os.path.join(data_dir, "embeddings.txt")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise LieError(f"cannot read embedding catalog: {e}") from None
    return Catalog(parse_embeddings(text))
