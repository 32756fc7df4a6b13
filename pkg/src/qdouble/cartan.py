"""Cartan data, grading monoids, bicharacters and Weyl-word utilities.

Degrees over the index set are plain integer tuples; the symmetric pairing
alpha_i . alpha_j = d_i a_ij drives every q-power in the algebra layers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    labels: tuple[str, ...]
    A: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        if len(self.A) != n or any(len(row) != n for row in self.A):
            raise CartanError("Cartan matrix shape does not match labels")
        if len(self.d) != n or any(di <= 0 for di in self.d):
            raise CartanError("symmetrizers must be positive")
        for i in range(n):
            if self.A[i][i] != 2:
                raise CartanError("diagonal Cartan entries must equal 2")
            for j in range(n):
                if i != j and self.A[i][j] > 0:
                    raise CartanError("off-diagonal Cartan entries must be <= 0")
                if i != j and (self.A[i][j] == 0) != (self.A[j][i] == 0):
                    raise CartanError("a_ij = 0 iff a_ji = 0 violated")
                if self.d[i] * self.A[i][j] != self.d[j] * self.A[j][i]:
                    raise CartanError("datum is not symmetrizable by d")

    # -- indices --------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        return self.labels.index(label)

    def alpha(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    # -- pairing layer ----------------------------------------------------
    def dot(self, alpha, beta) -> int:
        """alpha . beta = sum d_i a_ij alpha_i beta_j on Gamma."""
        tot = 0
        for i, ai in enumerate(alpha):
            if not ai:
                continue
            row = self.A[i]
            di = self.d[i]
            for j, bj in enumerate(beta):
                if bj:
                    tot += ai * bj * di * row[j]
        return tot

    def bidot(self, x, y) -> int:
        """Extension to Gamma + Gamma with alpha_{+-i} . alpha_{-+j} = -d_i a_ij.

        Bilinear: (x-, x+).(y-, y+) = (x+ - x-).(y+ - y-).
        """
        xm, xp = x
        ym, yp = y
        dif_x = tuple(p - m for p, m in zip(xp, xm))
        dif_y = tuple(p - m for p, m in zip(yp, ym))
        return self.dot(dif_x, dif_y)

    def eta(self, alpha) -> int:
        return sum(a * di for a, di in zip(alpha, self.d))

    def ulgamma(self, alpha) -> int:
        """gamma_(alpha) = alpha.alpha/2 - eta(alpha); vanishes on simple roots."""
        return self.dot(alpha, alpha) // 2 - self.eta(alpha)

    def coroot(self, i: int, alpha) -> int:
        """alpha_i^vee on Gamma."""
        return sum(self.A[i][j] * aj for j, aj in enumerate(alpha))

    def coroot_bi(self, i: int, bideg) -> int:
        """alpha_i^vee on Gamma + Gamma: alpha_i^vee(alpha_{+-j}) = +-a_ij."""
        minus, plus = bideg
        return self.coroot(i, plus) - self.coroot(i, minus)

    def qi_exp(self, i: int) -> int:
        """nu-exponent of q_i."""
        return 2 * self.d[i]

    # -- degree enumeration ------------------------------------------------
    def height(self, alpha) -> int:
        return sum(alpha)

    def degrees_up_to(self, gamma) -> list[tuple[int, ...]]:
        """All componentwise-bounded degrees, sorted by height then lex."""
        ranges = [range(g + 1) for g in gamma]
        out = [tuple(t) for t in product(*ranges)]
        out.sort(key=lambda t: (sum(t), t))
        return out

    def degrees_of_height(self, h: int) -> list[tuple[int, ...]]:
        out = []

        def rec(prefix, remaining, slots):
            if slots == 1:
                out.append(tuple(prefix + [remaining]))
                return
            for k in range(remaining + 1):
                rec(prefix + [k], remaining - k, slots - 1)

        rec([], h, self.rank)
        out.sort()
        return out

    # -- Weyl group (finite type only where needed) -------------------------
    def simple_reflection(self, i: int, alpha) -> tuple[int, ...]:
        c = self.coroot(i, alpha)
        out = list(alpha)
        out[i] -= c
        return tuple(out)

    def is_finite_type(self) -> bool:
        try:
            self.positive_roots()
            return True
        except CartanError:
            return False

    def positive_roots(self) -> list[tuple[int, ...]]:
        """Positive roots by reflection closure; raises for non-finite type."""
        roots = {self.alpha(i) for i in range(self.rank)}
        frontier = set(roots)
        bound = 64 * self.rank * self.rank
        while frontier:
            new = set()
            for beta in frontier:
                for i in range(self.rank):
                    im = self.simple_reflection(i, beta)
                    if all(c >= 0 for c in im) and im not in roots and any(im):
                        new.add(im)
            roots |= new
            frontier = new
            if len(roots) > bound:
                raise CartanError(f"datum {self.name or self.labels} is not of finite type")
        return sorted(roots, key=lambda t: (sum(t), t))

    def two_rho_dot(self, coroot_evals) -> int:
        """2 rho . mu for a weight mu given by its coroot evaluations."""
        total = 0
        for beta in self.positive_roots():
            total += sum(c * self.d[k] * coroot_evals[k] for k, c in enumerate(beta))
        return total

    def weyl_act(self, word, alpha):
        """Apply s_{i_1} ... s_{i_m} (leftmost acts last) to a root-lattice vector."""
        out = alpha
        for i in reversed(word):
            out = self.simple_reflection(i, out)
        return out

    def length(self, word) -> int:
        """Length of the Weyl element given by the word (finite type)."""
        inv = 0
        for beta in self.positive_roots():
            if any(c < 0 for c in self.weyl_act(word, beta)):
                inv += 1
        return inv

    def is_reduced(self, word) -> bool:
        return self.length(word) == len(word)

    def braid_order(self, i: int, j: int) -> int:
        """Order of s_i s_j: 2, 3, 4, 6 or 0 (infinite)."""
        m = self.A[i][j] * self.A[j][i]
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(m, 0)

    def longest_word(self) -> tuple[int, ...]:
        """A reduced word of the longest element (greedy descent on -rho)."""
        n_pos = len(self.positive_roots())
        word: list[int] = []
        # track image of the positive chamber via the set of positive roots
        # made negative; greedy: pick any i whose simple root is not yet inverted
        while len(word) < n_pos:
            for i in range(self.rank):
                trial = word + [i]
                if self.length(tuple(trial)) == len(trial):
                    word = trial
                    break
            else:
                raise CartanError("failed to extend reduced word")
        assert self.length(tuple(word)) == n_pos
        return tuple(word)

    def inversions(self, word) -> list[tuple[int, ...]]:
        """Positive roots sent negative by the inverse of the word's element."""
        out = []
        for beta in self.positive_roots():
            if any(c < 0 for c in self.weyl_act(tuple(reversed(word)), beta)):
                out.append(beta)
        return out

    # -- serialization -------------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({"labels": list(self.labels), "A": [list(r) for r in self.A], "d": list(self.d)})

    @staticmethod
    def from_json(text: str) -> "CartanDatum":
        obj = json.loads(text)
        return CartanDatum(
            tuple(obj["labels"]),
            tuple(tuple(r) for r in obj["A"]),
            tuple(obj["d"]),
            name=obj.get("name", ""),
        )


def _datum(name, labels, A, d):
    return CartanDatum(tuple(labels), tuple(tuple(r) for r in A), tuple(d), name=name)


PRESETS: dict[str, CartanDatum] = {
    "A1": _datum("A1", ["1"], [[2]], [1]),
    "A1xA1": _datum("A1xA1", ["1", "2"], [[2, 0], [0, 2]], [1, 1]),
    "A2": _datum("A2", ["1", "2"], [[2, -1], [-1, 2]], [1, 1]),
    # index 1 short (d=1), index 2 long (d=2): sp4 orientation
    "B2": _datum("B2", ["1", "2"], [[2, -2], [-1, 2]], [1, 2]),
    "G2": _datum("G2", ["1", "2"], [[2, -3], [-1, 2]], [1, 3]),
    "A3": _datum("A3", ["1", "2", "3"], [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    # affine A1: a12 = a21 = -2
    "A1affine": _datum("A1affine", ["1", "2"], [[2, -2], [-2, 2]], [1, 1]),
    # rank 3 with all off-diagonal entries -1 (affine sl3 shape)
    "R3": _datum("R3", ["1", "2", "3"], [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], [1, 1, 1]),
}

# fixed reduced words of the longest element used for PBW bases
LONGEST_WORDS: dict[str, tuple[int, ...]] = {
    "A1": (0,),
    "A1xA1": (0, 1),
    "A2": (0, 1, 0),
    "B2": (0, 1, 0, 1),
    "G2": (0, 1, 0, 1, 0, 1),
    "A3": (0, 1, 0, 2, 1, 0),
}


def get_datum(spec) -> CartanDatum:
    """Resolve a preset name, JSON text, or CartanDatum."""
    if isinstance(spec, CartanDatum):
        return spec
    if spec in PRESETS:
        return PRESETS[spec]
    if isinstance(spec, str) and spec.strip().startswith("{"):
        return CartanDatum.from_json(spec)
    raise CartanError(f"unknown Cartan datum {spec!r}")
