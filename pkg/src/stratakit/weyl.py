"""Weyl groups of types A/B/C/D as signed permutations.

An element is the tuple of images of 1..rank, entries in +-{1..rank}; a
negative image -j means the basis vector e_i is sent to f_j (and f_i to
e_j).  Simple reflections follow the standard-basis conventions of the
formed spaces in :mod:`stratakit.space`:

* type A: s_i = (i, i+1) for i < rank (rank means the number of letters);
* type B/C: additionally s_rank flips the sign of the last letter
  (e_k <-> f_k);
* type D: s_rank is (k-1, k) with both signs flipped, while s_{k-1} is the
  plain transposition; these are the two terminal nodes of the fork.

Length is the number of positive roots made negative, which agrees with
minimal word length (checked against breadth-first word search in the
tests).  The only nontrivial diagram automorphism supported is the type-D
twist swapping the two terminal nodes, realized as conjugation by the
sign flip at the last letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

LIE_TYPES = ("A", "B", "C", "D")


class WeylError(ValueError):
    pass


@dataclass(frozen=True)
class WeylCtx:
    lie_type: str
    rank: int
    twisted: bool = False  # order-2 diagram twist; type D only

    def __post_init__(self):
        if self.lie_type not in LIE_TYPES:
            raise WeylError(f"unknown type {self.lie_type!r}")
        if self.rank < 1:
            raise WeylError("rank must be >= 1")
        if self.twisted and self.lie_type != "D":
            raise WeylError("twist is only supported in type D")
        if self.lie_type == "D" and self.rank < 2:
            raise WeylError("type D needs rank >= 2")

    @property
    def simple_indices(self) -> tuple[int, ...]:
        if self.lie_type == "A":
            return tuple(range(1, self.rank))
        return tuple(range(1, self.rank + 1))

    def twist_index(self, i: int) -> int:
        if self.twisted and i in (self.rank - 1, self.rank):
            return 2 * self.rank - 1 - i
        return i

    def twist_set(self, I) -> frozenset[int]:
        return frozenset(self.twist_index(i) for i in I)


@dataclass(frozen=True)
class WeylElem:
    ctx: WeylCtx
    images: tuple[int, ...]
    word: tuple[int, ...] | None = field(default=None, compare=False)

    def __len__(self):
        return length(self)


def identity(ctx: WeylCtx) -> WeylElem:
    return WeylElem(ctx, tuple(range(1, ctx.rank + 1)), ())


def simple(ctx: WeylCtx, i: int) -> WeylElem:
    k = ctx.rank
    if i not in ctx.simple_indices:
        raise WeylError(f"s_{i} is not a simple reflection of {ctx}")
    e = list(range(1, k + 1))
    if i < k:
        e[i - 1], e[i] = e[i], e[i - 1]
    elif ctx.lie_type in ("B", "C"):
        e[k - 1] = -k
    elif ctx.lie_type == "D":
        e[k - 2], e[k - 1] = -k, -(k - 1)
    return WeylElem(ctx, tuple(e), (i,))


def mul(u: WeylElem, v: WeylElem) -> WeylElem:
    """(u v)(x) = u(v(x)); words concatenate."""
    if u.ctx != v.ctx:
        raise WeylError("mixed contexts")
    ui = u.images
    out = []
    for j in v.images:
        out.append(ui[j - 1] if j > 0 else -ui[-j - 1])
    word = None
    if u.word is not None and v.word is not None:
        word = u.word + v.word
    return WeylElem(u.ctx, tuple(out), word)


def inverse(w: WeylElem) -> WeylElem:
    k = w.ctx.rank
    out = [0] * k
    for i in range(1, k + 1):
        j = w.images[i - 1]
        if j > 0:
            out[j - 1] = i
        else:
            out[-j - 1] = -i
    word = tuple(reversed(w.word)) if w.word is not None else None
    return WeylElem(w.ctx, tuple(out), word)


def from_word(ctx: WeylCtx, word) -> WeylElem:
    """Evaluate a word; the rightmost letter acts first."""
    w = identity(ctx)
    for a in word:
        w = mul(w, simple(ctx, a))
    return WeylElem(ctx, w.images, tuple(word))


def act(w: WeylElem, vector: tuple[str, int]) -> tuple[str, int]:
    """Image of a basis vector ('e', i) or ('f', i)."""
    kind, i = vector
    if kind not in ("e", "f") or not 1 <= i <= w.ctx.rank:
        raise WeylError(f"bad basis vector {vector}")
    j = w.images[i - 1]
    if kind == "f":
        j = -j
    return ("e", j) if j > 0 else ("f", -j)


# -- length by root inversion counting ----------------------------------

def _positive_roots(ctx: WeylCtx):
    k, t = ctx.rank, ctx.lie_type
    roots = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            roots.append((i, j, -1))  # e_i - e_j
            if t in ("B", "C", "D"):
                roots.append((i, j, +1))  # e_i + e_j
        if t in ("B", "C"):
            roots.append((i, 0, 0))  # e_i (or 2e_i; same inversion count)
    return tuple(roots)


_ROOT_CACHE: dict[tuple, tuple] = {}


def length(w: WeylElem) -> int:
    key = (w.ctx.lie_type, w.ctx.rank)
    roots = _ROOT_CACHE.get(key)
    if roots is None:
        roots = _positive_roots(w.ctx)
        _ROOT_CACHE[key] = roots
    im = w.images
    count = 0
    for i, j, s in roots:
        a = im[i - 1]
        if j == 0:
            if a < 0:
                count += 1
            continue
        b = im[j - 1] if s == -1 else -im[j - 1]
        # root image is sgn(a) e_|a| - sgn(b) e_|b|; decide its sign
        if abs(a) == abs(b):
            # coefficients add on one letter: 2e or 0 never occurs for
            # distinct i<j in these types unless signs align
            c = (1 if a > 0 else -1) - (1 if b > 0 else -1)
            if c < 0:
                count += 1
            continue
        if abs(a) < abs(b):
            if a < 0:
                count += 1
        else:
            if b > 0:
                count += 1
    return count


def left_descents(w: WeylElem) -> list[int]:
    lw = length(w)
    return [i for i in w.ctx.simple_indices if length(mul(simple(w.ctx, i), w)) < lw]


def right_descents(w: WeylElem) -> list[int]:
    lw = length(w)
    return [i for i in w.ctx.simple_indices if length(mul(w, simple(w.ctx, i))) < lw]


def reduced_word(w: WeylElem) -> tuple[int, ...]:
    """One reduced word via greedy removal of the smallest right descent."""
    out = []
    cur = w
    while True:
        ds = right_descents(cur)
        if not ds:
            break
        s = min(ds)
        out.append(s)
        cur = mul(cur, simple(w.ctx, s))
    if cur.images != identity(w.ctx).images:
        raise WeylError("descent recursion did not reach the identity (bug)")
    return tuple(reversed(out))


def support(w: WeylElem) -> frozenset[int]:
    """Simple reflections occurring in a reduced word (word independent)."""
    return frozenset(reduced_word(w))


def longest_parabolic_length(ctx: WeylCtx, K) -> int:
    """Length of the longest element of the standard parabolic W_K.

    Greedy ascent: repeatedly multiply by any generator in K that raises
    length; the unique element of W_K with no ascent in K is its longest.
    """
    w = identity(ctx)
    lw = 0
    while True:
        for i in K:
            cand = mul(w, simple(ctx, i))
            lc = length(cand)
            if lc > lw:
                w, lw = cand, lc
                break
        else:
            return lw


def is_min_double_coset(w: WeylElem, I, J) -> bool:
    """Distinguished double-coset representative test: no left descent in I,
    no right descent in J."""
    lw = length(w)
    for i in I:
        if length(mul(simple(w.ctx, i), w)) < lw:
            return False
    for j in J:
        if length(mul(w, simple(w.ctx, j))) < lw:
            return False
    return True


@dataclass(frozen=True)
class ParabolicIndex:
    ctx: WeylCtx
    gens: frozenset[int]

    def __post_init__(self):
        bad = set(self.gens) - set(self.ctx.simple_indices)
        if bad:
            raise WeylError(f"indices {sorted(bad)} out of range")


def parabolic(ctx: WeylCtx, gens) -> ParabolicIndex:
    return ParabolicIndex(ctx, frozenset(gens))


def _simple_lookup(ctx: WeylCtx) -> dict[tuple[int, ...], int]:
    return {simple(ctx, i).images: i for i in ctx.simple_indices}


def dl_dimension(I: ParabolicIndex, w: WeylElem) -> int:
    """Dimension of the Deligne-Lusztig variety X_{P_I}(w).

    Computes len(w) + len(W_{Phi(I)}) - len(W_{I cap w Phi(I) w^-1}); w is
    required to be the distinguished representative of W_I w W_{Phi(I)}.
    """
    ctx = w.ctx
    phi_I = ctx.twist_set(I.gens)
    if not is_min_double_coset(w, I.gens, phi_I):
        raise WeylError("w is not minimal in its double coset")
    lookup = _simple_lookup(ctx)
    winv = inverse(w)
    K = set()
    for sp in phi_I:
        c = mul(mul(w, simple(ctx, sp)), winv)
        idx = lookup.get(c.images)
        if idx is not None and idx in I.gens:
            K.add(idx)
    return (
        length(w)
        + longest_parabolic_length(ctx, phi_I)
        - longest_parabolic_length(ctx, K)
    )


def is_irreducible(I: ParabolicIndex, w: WeylElem) -> bool:
    """Irreducibility criterion: the twist closure of I plus supp(w) must
    exhaust the simple reflections."""
    ctx = w.ctx
    J = set(I.gens) | set(support(w))
    while True:
        J2 = J | set(ctx.twist_set(J))
        if J2 == J:
            break
        J = J2
    return frozenset(J) == frozenset(ctx.simple_indices)


def enumerate_group(ctx: WeylCtx):
    """BFS over words; returns {images: distance}.  Small ranks only."""
    gens = [simple(ctx, i) for i in ctx.simple_indices]
    e = identity(ctx)
    dist = {e.images: 0}
    frontier = [e]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                u = mul(w, g)
                if u.images not in dist:
                    dist[u.images] = dist[w.images] + 1
                    new.append(u)
        frontier = new
    return dist


# -- the explicit word families on formed spaces ------------------------
#
# Symplectic conventions: rank t = half the space dimension, parameter h
# with 0 <= s <= h <= r <= t.  Orthogonal even/odd: rank k = half the
# space dimension (rounded down), parameter hp with 0 <= s <= hp < r <= k.
# Linear: rank m letters, parameter hh with 0 <= s <= hh <= r <= m.


def _rng(a: int, b: int) -> list[int]:
    """[a, a+1, ..., b] (empty when a > b)."""
    return list(range(a, b + 1))


def _rng_desc(a: int, b: int) -> list[int]:
    """[a, a-1, ..., b] (empty when a < b)."""
    return list(range(a, b - 1, -1))


def symplectic_ctx(t: int) -> WeylCtx:
    return WeylCtx("C", t)


def symplectic_g_word(i: int, t: int) -> list[int]:
    return _rng(i, t - 1) + [t] + _rng_desc(t - 1, i)


def symplectic_w_word(t: int, h: int, r: int, s: int) -> list[int]:
    if not (0 <= s <= h < r <= t):
        raise WeylError(f"bad symplectic parameters r={r}, s={s} for (t={t}, h={h})")
    return _rng(t - h, t - s - 1) + symplectic_g_word(t - s, t) + _rng_desc(t - h - 1, t - r + 1)


def symplectic_wprime_word(t: int, h: int, r: int, s: int) -> list[int]:
    if not (0 <= s < h < r <= t):
        raise WeylError(f"bad symplectic parameters r={r}, s={s} for (t={t}, h={h})")
    return _rng_desc(t - h, t - r + 1) + _rng(t - h + 1, t - s - 1)


def symplectic_w_lambda_word(t: int, h: int) -> list[int]:
    return symplectic_g_word(t - h, t)


def symplectic_wprime_lambda_word(t: int, h: int) -> list[int]:
    return [t - h]


def symplectic_index_set(t: int, h: int, r: int, s: int) -> frozenset[int]:
    """I_rs: all simple reflections except s_{t-r} .. s_{t-s}."""
    gap = set(range(t - r, t - s + 1))
    return frozenset(i for i in range(1, t + 1) if i not in gap)


def orthogonal_even_ctx(k: int, twisted: bool) -> WeylCtx:
    return WeylCtx("D", k, twisted)


def orthogonal_even_g_word(i: int, k: int, delta: str = "+") -> list[int]:
    if i == k:
        return [k - 1] if delta == "+" else [k]
    if i == k - 1:
        return [k, k - 1]
    return _rng(i, k - 2) + [k, k - 1] + _rng_desc(k - 2, i)


def orthogonal_even_w_word(k: int, hp: int, r: int, s: int, delta: str = "+") -> list[int]:
    if not (0 <= s <= hp < r <= k):
        raise WeylError(f"bad orthogonal parameters r={r}, s={s} for (k={k}, hp={hp})")
    return (
        _rng(k - hp, k - s - 1)
        + orthogonal_even_g_word(k - s, k, delta)
        + _rng_desc(k - hp - 1, k - r + 1)
    )


def orthogonal_even_wprime_word(k: int, hp: int, r: int, s: int, delta: str = "+") -> list[int]:
    if not (0 <= s < hp < r <= k):
        raise WeylError(f"bad orthogonal parameters r={r}, s={s} for (k={k}, hp={hp})")
    if delta == "-" and s == 0 and hp == 1:
        # the second signed family in the almost-maximal case
        return [k] + _rng_desc(k - 2, k - r + 1)
    return _rng_desc(k - hp, k - r + 1) + _rng(k - hp + 1, k - s - 1)


def orthogonal_odd_ctx(k: int) -> WeylCtx:
    return WeylCtx("B", k)


def orthogonal_odd_g_word(i: int, k: int) -> list[int]:
    return _rng(i, k - 1) + [k] + _rng_desc(k - 1, i)


def orthogonal_odd_w_word(k: int, hp: int, r: int, s: int) -> list[int]:
    if not (0 <= s <= hp < r <= k):
        raise WeylError(f"bad orthogonal parameters r={r}, s={s} for (k={k}, hp={hp})")
    return _rng(k - hp, k - s - 1) + orthogonal_odd_g_word(k - s, k) + _rng_desc(k - hp - 1, k - r + 1)


def orthogonal_odd_wprime_word(k: int, hp: int, r: int, s: int) -> list[int]:
    if not (0 <= s < hp < r <= k):
        raise WeylError(f"bad orthogonal parameters r={r}, s={s} for (k={k}, hp={hp})")
    return _rng_desc(k - hp, k - r + 1) + _rng(k - hp + 1, k - s - 1)


def orthogonal_index_set(k: int, hp: int, r: int, s: int, near_maximal: bool) -> frozenset[int]:
    """I_rs for both orthogonal flavors.

    ``near_maximal`` selects the h >= n-2 convention where only the left
    chain survives; otherwise all reflections outside s_{k-r} .. s_{k-s}.
    """
    if near_maximal:
        return frozenset(range(1, k - r))
    gap = set(range(k - r, k - s + 1))
    return frozenset(i for i in range(1, k + 1) if i not in gap)


def expected_w_action(t: int, h: int, r: int, s: int) -> dict:
    """The basis action of the symplectic w_(r,s) family element.

    Keys are ('e'|'f', index) pairs; every basis vector appears.  For
    s = h this is the single long cycle through both letters, otherwise
    the double chain with the crossing at the top index.
    """
    act: dict[tuple[str, int], tuple[str, int]] = {}
    for i in range(1, t - r + 1):
        act[("e", i)] = ("e", i)
        act[("f", i)] = ("f", i)
    for i in range(t - s + 1, t + 1):
        act[("e", i)] = ("e", i)
        act[("f", i)] = ("f", i)
    if s == h:
        # e_{t-r+1} -> f_{t-h} -> f_{t-h-1} -> ... -> f_{t-r+1} -> e_{t-h}
        # -> e_{t-h-1} -> ... -> e_{t-r+1}
        act[("e", t - r + 1)] = ("f", t - h)
        for i in range(t - r + 2, t - h + 1):
            act[("e", i)] = ("e", i - 1)
        act[("f", t - r + 1)] = ("e", t - h)
        for i in range(t - r + 2, t - h + 1):
            act[("f", i)] = ("f", i - 1)
        return act
    for kind in ("e", "f"):
        other = "f" if kind == "e" else "e"
        act[(kind, t - r + 1)] = (kind, t - h + 1)
        for i in range(t - r + 2, t - h + 1):
            act[(kind, i)] = (kind, i - 1)
        for i in range(t - h + 1, t - s):
            act[(kind, i)] = (kind, i + 1)
        act[(kind, t - s)] = (other, t - h)
    return act


def expected_wprime_action(t: int, h: int, r: int, s: int) -> dict:
    """Basis action of the symplectic w'_(r,s) element: one cycle on the
    e's and the same cycle on the f's, no sign crossings."""
    act: dict[tuple[str, int], tuple[str, int]] = {}
    for kind in ("e", "f"):
        for i in range(1, t - r + 1):
            act[(kind, i)] = (kind, i)
        for i in range(t - s + 1, t + 1):
            act[(kind, i)] = (kind, i)
        act[(kind, t - r + 1)] = (kind, t - h + 1)
        for i in range(t - r + 2, t - h + 1):
            act[(kind, i)] = (kind, i - 1)
        for i in range(t - h + 1, t - s):
            act[(kind, i)] = (kind, i + 1)
        act[(kind, t - s)] = (kind, t - h)
    return act


def symplectic_audit(t_max: int) -> dict:
    """Length, reducedness, minimality, action-diagram and dimension
    tables for the symplectic families up to the given rank."""
    checks = []
    counts = []
    for t in range(1, t_max + 1):
        ctx = symplectic_ctx(t)
        for h in range(0, t):
            for r in range(h + 1, t + 1):
                for s in range(0, h + 1):
                    word = symplectic_w_word(t, h, r, s)
                    w = from_word(ctx, word)
                    I = parabolic(ctx, symplectic_index_set(t, h, r, s))
                    ok_len = length(w) == r + s
                    ok_red = len(word) == length(w)
                    ok_min = is_min_double_coset(w, I.gens, I.gens)
                    ok_dim = dl_dimension(I, w) == r + s if ok_min else False
                    exp = expected_w_action(t, h, r, s)
                    ok_act = all(act(w, v) == img for v, img in exp.items())
                    ok = ok_len and ok_red and ok_min and ok_dim and ok_act
                    checks.append({
                        "name": f"w t={t} h={h} r={r} s={s}",
                        "status": "pass" if ok else "fail",
                        **({} if ok else {"witness": {
                            "length": ok_len, "reduced": ok_red, "minimal": ok_min,
                            "dimension": ok_dim, "action": ok_act}}),
                    })
                for s in range(0, h):
                    word = symplectic_wprime_word(t, h, r, s)
                    w = from_word(ctx, word)
                    I = parabolic(ctx, symplectic_index_set(t, h, r, s))
                    ok_red = len(word) == length(w) == r - s - 1
                    ok_min = is_min_double_coset(w, I.gens, I.gens)
                    ok_dim = dl_dimension(I, w) == r - s - 1 if ok_min else False
                    exp = expected_wprime_action(t, h, r, s)
                    ok_act = all(act(w, v) == img for v, img in exp.items())
                    ok = ok_red and ok_min and ok_dim and ok_act
                    checks.append({
                        "name": f"w' t={t} h={h} r={r} s={s}",
                        "status": "pass" if ok else "fail",
                        **({} if ok else {"witness": {
                            "reduced": ok_red, "minimal": ok_min,
                            "dimension": ok_dim, "action": ok_act}}),
                    })
            top = from_word(ctx, symplectic_w_word(t, h, t, h))
            I_top = parabolic(ctx, symplectic_index_set(t, h, t, h))
            counts.append({
                "label": f"dl_dim top t={t} h={h}",
                "count": dl_dimension(I_top, top),
            })
            checks.append({
                "name": f"top irreducible t={t} h={h}",
                "status": "pass" if is_irreducible(I_top, top) else "fail",
            })
    return {"config": {"t_max": t_max, "family": "symplectic"},
            "counts": counts, "checks": checks}


def linear_ctx(m: int) -> WeylCtx:
    return WeylCtx("A", m)


def linear_w_word(m: int, hh: int, r: int, s: int) -> list[int]:
    if not (0 <= s <= hh <= r <= m):
        raise WeylError(f"bad linear parameters r={r}, s={s} for (m={m}, hh={hh})")
    return _rng(hh, r - 1) + _rng_desc(hh - 1, s + 1)


def linear_index_set(m: int, hh: int, r: int, s: int) -> frozenset[int]:
    return frozenset(i for i in range(1, m) if i < s or i > r)
