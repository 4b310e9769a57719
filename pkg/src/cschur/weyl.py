"""The affine Weyl group of type C_d acting on Z^d with period n.

Generators s_0, ..., s_d act on the right of f in Z^d:

* s_0 negates f_1,
* s_i (0 < i < d) swaps f_i and f_{i+1},
* s_d sends f_d to n - f_d.

An element is stored by its affine action data (perm, signs, offsets) with
(f . g)_i = signs_i * f_{perm_i} + n * offsets_i, which gives O(d)
composition and exact equality.  Length is computed by counting the affine
reflection walls (f_i = c for c in (n/2)Z, f_i -+ f_j = mn) separating the
fundamental alcove 0 < p_1 < ... < p_d < n/2 from its image; a BFS oracle
cross-checks this in the test suite.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


class WeylElt:
    __slots__ = ("group", "perm", "signs", "offs", "key", "_hash")

    def __init__(self, group: "WeylGroup", perm: tuple[int, ...],
                 signs: tuple[int, ...], offs: tuple[int, ...]):
        self.group = group
        self.perm = perm
        self.signs = signs
        self.offs = offs
        self.key = (perm, signs, offs)
        self._hash = hash((group.d, group.n, self.key))

    def act(self, f: Sequence[int]) -> tuple[int, ...]:
        """Right action f |-> f . self."""
        n = self.group.n
        perm, signs, offs = self.perm, self.signs, self.offs
        return tuple(signs[i] * f[perm[i]] + n * offs[i] for i in range(len(perm)))

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return self.group.multiply(self, other)

    def inverse(self) -> "WeylElt":
        perm, signs, offs = self.perm, self.signs, self.offs
        d = len(perm)
        inv = [0] * d
        for i, p in enumerate(perm):
            inv[p] = i
        nsigns = tuple(signs[inv[i]] for i in range(d))
        noffs = tuple(-signs[inv[i]] * offs[inv[i]] for i in range(d))
        return WeylElt(self.group, tuple(inv), nsigns, noffs)

    def is_identity(self) -> bool:
        return self is self.group.identity or self.key == self.group.identity.key

    @property
    def length(self) -> int:
        return self.group.length(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.key == other.key and self.group.params == other.group.params

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"WeylElt({self.group.word_str(self.group.reduced_word(self))!r})"


class WeylGroup:
    """Affine Weyl group of type C_d, period n (n even, n >= 4)."""

    def __init__(self, d: int, n: int):
        if d < 1:
            raise ValueError("rank d must be >= 1")
        if n < 4 or n % 2:
            raise ValueError("period n must be even and >= 4")
        self.d = d
        self.n = n
        self.params = (d, n)
        ident = tuple(range(d))
        ones = (1,) * d
        zeros = (0,) * d
        self.identity = WeylElt(self, ident, ones, zeros)
        self.gens = tuple(self._generator(i) for i in range(d + 1))
        self._len: dict[tuple, int] = {self.identity.key: 0}
        self._word: dict[tuple, tuple[int, ...]] = {self.identity.key: ()}
        self._par: dict[frozenset, tuple[WeylElt, ...]] = {}
        self._ball: list[WeylElt] | None = None
        self._ball_len = -1

    def _generator(self, i: int) -> WeylElt:
        d = self.d
        if not 0 <= i <= d:
            raise IndexError(f"generator index {i} out of range 0..{d}")
        perm = list(range(d))
        signs = [1] * d
        offs = [0] * d
        if i == 0:
            signs[0] = -1
        elif i == d:
            signs[d - 1] = -1
            offs[d - 1] = 1
        else:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return WeylElt(self, tuple(perm), tuple(signs), tuple(offs))

    def generator(self, i: int) -> WeylElt:
        return self.gens[i]

    def multiply(self, g: WeylElt, h: WeylElt) -> WeylElt:
        """The element g*h acting by f |-> (f . g) . h."""
        if g.group.params != h.group.params:
            raise ValueError("elements of different Weyl groups")
        gp, gs, go = g.perm, g.signs, g.offs
        hp, hs, ho = h.perm, h.signs, h.offs
        d = self.d
        perm = tuple(gp[hp[i]] for i in range(d))
        signs = tuple(hs[i] * gs[hp[i]] for i in range(d))
        offs = tuple(hs[i] * go[hp[i]] + ho[i] for i in range(d))
        return WeylElt(self, perm, signs, offs)

    def word_elt(self, letters: Iterable[int]) -> WeylElt:
        g = self.identity
        for i in letters:
            g = self.multiply(g, self.gens[i])
        return g

    # -- length and reduced words

    def length(self, g: WeylElt) -> int:
        cached = self._len.get(g.key)
        if cached is not None:
            return cached
        # integer-rescaled interior point x_i = i, walls at multiples of
        # d+1 (coordinates) and 2(d+1) (differences and sums)
        d = self.d
        m1 = d + 1
        m2 = 2 * m1
        perm, signs, offs = g.perm, g.signs, g.offs
        y = [signs[i] * (perm[i] + 1) + m2 * offs[i] for i in range(d)]
        count = 0
        for i in range(d):
            count += abs(y[i] // m1)  # x_i // m1 == 0
        for i in range(d):
            for j in range(i + 1, d):
                u = (i + 1) - (j + 1)
                count += abs((y[i] - y[j]) // m2 - u // m2)
                count += abs((y[i] + y[j]) // m2)  # (x_i + x_j) // m2 == 0
        self._len[g.key] = count
        return count

    def reduced_word(self, g: WeylElt) -> tuple[int, ...]:
        """Deterministic reduced word: smallest right-descent index, greedily."""
        cached = self._word.get(g.key)
        if cached is not None:
            return cached
        letters: list[int] = []
        cur = g
        lcur = self.length(cur)
        while lcur > 0:
            for i in range(self.d + 1):
                nxt = self.multiply(cur, self.gens[i])
                if self.length(nxt) < lcur:
                    letters.append(i)
                    cur = nxt
                    lcur -= 1
                    break
            else:
                raise AssertionError("no descent found for a non-identity element")
        word = tuple(reversed(letters))
        self._word[g.key] = word
        return word

    def descents_right(self, g: WeylElt) -> list[int]:
        lg = self.length(g)
        return [i for i in range(self.d + 1)
                if self.length(self.multiply(g, self.gens[i])) < lg]

    # -- subgroups and cosets

    def parabolic(self, gens: Iterable[int]) -> tuple[WeylElt, ...]:
        """All elements of the subgroup generated by the listed s_i (BFS closure)."""
        gset = frozenset(gens)
        if not gset <= set(range(self.d + 1)):
            raise ValueError("generator indices out of range")
        if len(gset) == self.d + 1:
            raise ValueError("the full generator set spans an infinite group")
        cached = self._par.get(gset)
        if cached is not None:
            return cached
        seen = {self.identity.key: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for i in gset:
                    h = self.multiply(g, self.gens[i])
                    if h.key not in seen:
                        seen[h.key] = h
                        nxt.append(h)
            frontier = nxt
        out = tuple(sorted(seen.values(), key=lambda w: (self.length(w), w.key)))
        self._par[gset] = out
        return out

    def is_min_right(self, g: WeylElt, gens: Iterable[int]) -> bool:
        """g is the minimal-length element of W_gens . g."""
        lg = self.length(g)
        return all(self.length(self.multiply(self.gens[i], g)) > lg for i in gens)

    def is_min_left(self, g: WeylElt, gens: Iterable[int]) -> bool:
        """g is the minimal-length element of g . W_gens."""
        lg = self.length(g)
        return all(self.length(self.multiply(g, self.gens[i])) > lg for i in gens)

    def double_coset(self, lgens: Iterable[int], g: WeylElt,
                     rgens: Iterable[int]) -> list[WeylElt]:
        """The finite set W_l . g . W_r, deduplicated."""
        left = self.parabolic(lgens)
        right = self.parabolic(rgens)
        seen: dict[tuple, WeylElt] = {}
        for w in left:
            wg = self.multiply(w, g)
            for w2 in right:
                u = self.multiply(wg, w2)
                seen.setdefault(u.key, u)
        return sorted(seen.values(), key=lambda w: (self.length(w), w.key))

    def min_double_rep(self, lgens: Iterable[int], g: WeylElt,
                       rgens: Iterable[int]) -> WeylElt:
        lgens = tuple(lgens)
        rgens = tuple(rgens)
        reps = [w for w in self.double_coset(lgens, g, rgens)
                if self.is_min_right(w, lgens) and self.is_min_left(w, rgens)]
        if len(reps) != 1:
            raise AssertionError(f"expected one minimal double-coset representative, got {len(reps)}")
        return reps[0]

    def ball(self, maxlen: int) -> list[WeylElt]:
        """All elements of length <= maxlen, by breadth-first closure."""
        if self._ball is not None and self._ball_len >= maxlen:
            return [g for g in self._ball if self.length(g) <= maxlen]
        seen = {self.identity.key: self.identity}
        layer = [self.identity]
        for _ in range(maxlen):
            nxt = []
            for g in layer:
                for s in self.gens:
                    h = self.multiply(g, s)
                    if h.key not in seen:
                        seen[h.key] = h
                        nxt.append(h)
            layer = nxt
        out = sorted(seen.values(), key=lambda w: (self.length(w), w.key))
        self._ball = out
        self._ball_len = maxlen
        return out

    def bfs_lengths(self, maxlen: int) -> dict[tuple, int]:
        """Word-length BFS distances from the identity (length oracle)."""
        dist = {self.identity.key: 0}
        queue = deque([(self.identity, 0)])
        while queue:
            g, l = queue.popleft()
            if l == maxlen:
                continue
            for s in self.gens:
                h = self.multiply(g, s)
                if h.key not in dist:
                    dist[h.key] = l + 1
                    queue.append((h, l + 1))
        return dist

    # -- text form

    def word_str(self, letters: Sequence[int]) -> str:
        return ".".join(f"s{i}" for i in letters) if letters else "e"

    def elt_str(self, g: WeylElt) -> str:
        return self.word_str(self.reduced_word(g))

    def parse_elt(self, text: str) -> WeylElt:
        text = text.strip()
        if text in ("", "e"):
            return self.identity
        letters = []
        for part in text.split("."):
            part = part.strip()
            if not part.startswith("s") or not part[1:].isdigit():
                raise ValueError(f"bad generator {part!r} in word {text!r}")
            letters.append(int(part[1:]))
        return self.word_elt(letters)
