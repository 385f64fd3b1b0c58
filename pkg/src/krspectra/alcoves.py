"""Type-A extended affine Weyl group, alcoves, walls, and point classification.

Points live in the quotient of rational n-space by constant vectors and are
canonicalized to mean zero.  The base alcove is

    a_n + 1 >= a_1 >= a_2 >= ... >= a_n,

its walls in order are H^0_{1,2}, ..., H^0_{n-1,n}, H^{-1}_{n,1}.
Classification folds a regular point into the base alcove by affine
reflections; points on a wall return the list of walls through them.
"""

from __future__ import annotations

from fractions import Fraction


class AlcoveError(ValueError):
    pass


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class AffinePoint:
    """A rational point of the (mean-zero) Cartan quotient."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = [_fr(c) for c in coords]
        mean = sum(coords, Fraction(0)) / len(coords)
        self.coords = tuple(c - mean for c in coords)

    @property
    def n(self):
        return len(self.coords)

    def is_regular(self):
        n = self.n
        for i in range(n):
            for j in range(i + 1, n):
                if (self.coords[i] - self.coords[j]).denominator == 1:
                    return False
        return True

    def walls_through(self):
        n = self.n
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                d = self.coords[i] - self.coords[j]
                if d.denominator == 1:
                    out.append(Wall(i + 1, j + 1, int(d)))
        return out

    def __eq__(self, other):
        return isinstance(other, AffinePoint) and self.coords == other.coords

    def __repr__(self):
        return f"AffinePoint({', '.join(str(c) for c in self.coords)})"


class Wall:
    """The hyperplane a_i - a_j = k, canonicalized with i < j."""

    __slots__ = ("i", "j", "k")

    def __init__(self, i, j, k):
        if i == j:
            raise AlcoveError("wall needs distinct indices")
        if i > j:
            i, j, k = j, i, -k
        self.i, self.j, self.k = i, j, int(k)

    def contains(self, x: AffinePoint):
        return x.coords[self.i - 1] - x.coords[self.j - 1] == self.k

    def key(self):
        return (self.i, self.j, self.k)

    def __eq__(self, other):
        return isinstance(other, Wall) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"H^{self.k}_({self.i},{self.j})"


class ExtAffineWeylElt:
    """(sigma, m): permute after translating; acts as x -> sigma(x + m).

    sigma is a tuple with sigma[i] = image of i+1 (1-based values); the
    translation class m is stored with last coordinate zero.
    """

    __slots__ = ("sigma", "m")

    def __init__(self, sigma, m):
        self.sigma = tuple(sigma)
        shift = m[-1]
        self.m = tuple(int(x - shift) for x in m)

    @staticmethod
    def identity(n):
        return ExtAffineWeylElt(tuple(range(1, n + 1)), (0,) * n)

    @property
    def n(self):
        return len(self.sigma)

    def is_affine_weyl(self):
        """Whether the translation class lies in the image of the coroot lattice."""
        return sum(self.m) % self.n == 0

    def apply(self, x: AffinePoint) -> AffinePoint:
        n = self.n
        out = [Fraction(0)] * n
        for idx in range(n):
            out[self.sigma[idx] - 1] = x.coords[idx] + self.m[idx]
        return AffinePoint(out)

    def apply_wall(self, w: Wall) -> Wall:
        # x on w iff x_i - x_j = k; image point y = sigma(x+m):
        # y_{sigma(i)} - y_{sigma(j)} = k + m_i - m_j
        return Wall(
            self.sigma[w.i - 1],
            self.sigma[w.j - 1],
            w.k + self.m[w.i - 1] - self.m[w.j - 1],
        )

    def compose(self, other: "ExtAffineWeylElt") -> "ExtAffineWeylElt":
        """(s1,m1)*(s2,m2) = (s1 s2, s2^{-1}(m1) + m2); self acts after other."""
        n = self.n
        s1, m1 = self.sigma, self.m
        s2, m2 = other.sigma, other.m
        sigma = tuple(s1[s2[i] - 1] for i in range(n))
        m = tuple(m1[s2[i] - 1] + m2[i] for i in range(n))
        return ExtAffineWeylElt(sigma, m)

    def inverse(self) -> "ExtAffineWeylElt":
        n = self.n
        inv = [0] * n
        for i in range(n):
            inv[self.sigma[i] - 1] = i + 1
        m = tuple(-self.m[inv[i] - 1] for i in range(n))
        return ExtAffineWeylElt(tuple(inv), m)

    def key(self):
        return (self.sigma, self.m)

    def __eq__(self, other):
        return isinstance(other, ExtAffineWeylElt) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"w(sigma={self.sigma}, m={self.m})"


def in_alcove(w: ExtAffineWeylElt, x: AffinePoint, strict=False):
    """Membership in Q_w via the defining chain of inequalities."""
    q = w.inverse().apply(x)
    a = q.coords
    n = len(a)
    chain = [a[i] - a[i + 1] for i in range(n - 1)] + [a[n - 1] + 1 - a[0]]
    if strict:
        return all(c > 0 for c in chain)
    return all(c >= 0 for c in chain)


def classify(x: AffinePoint):
    """Fold into the base alcove.

    Regular points return the unique affine Weyl element w with x in w(Q);
    wall points return the list of walls through x.
    """
    if not x.is_regular():
        return x.walls_through()
    n = x.n
    cur = x
    # w with cur = w^{-1} x, maintained as an explicit element
    w = ExtAffineWeylElt.identity(n)
    guard = 0
    while True:
        guard += 1
        if guard > 100000:
            raise AlcoveError("reflection folding failed to terminate")
        a = cur.coords
        moved = False
        for i in range(n - 1):
            if a[i] < a[i + 1]:
                sigma = list(range(1, n + 1))
                sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
                s = ExtAffineWeylElt(tuple(sigma), (0,) * n)
                cur = s.apply(cur)
                w = s.compose(w)
                moved = True
                break
        if moved:
            continue
        if cur.coords[0] - cur.coords[n - 1] > 1:
            # affine reflection in a_1 - a_n = 1: swap and translate
            sigma = list(range(1, n + 1))
            sigma[0], sigma[n - 1] = sigma[n - 1], sigma[0]
            m = [0] * n
            m[0] = -1
            m[n - 1] = 1
            s = ExtAffineWeylElt(tuple(sigma), tuple(m))
            cur = s.apply(cur)
            w = s.compose(w)
            continue
        break
    w = w.inverse()
    if not in_alcove(w, x):
        raise AlcoveError("internal: folding produced a wrong alcove")
    return w


def walls_of(w: ExtAffineWeylElt):
    """The n bounding walls of Q_w in the standard order (n-th is affine)."""
    n = w.n
    base = [Wall(i, i + 1, 0) for i in range(1, n)] + [Wall(n, 1, -1)]
    return [w.apply_wall(h) for h in base]


def base_walls(n):
    return walls_of(ExtAffineWeylElt.identity(n))


def subregular_sample(w: ExtAffineWeylElt, j) -> AffinePoint:
    """A deterministic rational point interior to wall j of Q_w, on no other wall.

    Gap recipe in the base alcove: gap j is zero, the others are distinct
    positive rationals summing to 1.
    """
    n = w.n
    if not (1 <= j <= n):
        raise AlcoveError(f"wall index {j} out of range")
    weights = [0 if (m + 1) == j else m + 2 for m in range(n)]
    total = sum(weights)
    gaps = [Fraction(wt, total) for wt in weights]
    coords = [Fraction(0)] * n
    for i in range(n - 1, 0, -1):
        coords[i - 1] = coords[i] + gaps[i - 1]
    x = AffinePoint(coords)
    return w.apply(x)


def regular_sample(w: ExtAffineWeylElt, seed=0) -> AffinePoint:
    """A deterministic interior point of Q_w."""
    n = w.n
    weights = [m + 2 + (seed % 7) for m in range(n)]
    weights[seed % n] += 1
    total = sum(weights)
    gaps = [Fraction(wt, total) for wt in weights]
    coords = [Fraction(0)] * n
    for i in range(n - 1, 0, -1):
        coords[i - 1] = coords[i] + gaps[i - 1]
    return w.apply(AffinePoint(coords))
