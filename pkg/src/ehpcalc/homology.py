"""Integer chain complexes, Smith normal form, reduced homology."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .simplicial import SSet, face


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense matrix with arbitrary-precision integer entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DomainError("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise DomainError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise DomainError("column count mismatch")

    @staticmethod
    def from_rows(rows_list, cols: int | None = None) -> "IntegerMatrix":
        rows_list = [tuple(int(v) for v in row) for row in rows_list]
        if cols is None:
            cols = len(rows_list[0]) if rows_list else 0
        return IntegerMatrix(len(rows_list), cols, tuple(rows_list))

    @staticmethod
    def identity(n: int) -> "IntegerMatrix":
        return IntegerMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntegerMatrix":
        return IntegerMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DomainError("matrix shapes do not compose")
        cols = [tuple(row[j] for row in other.entries) for j in range(other.cols)]
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        )
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)


def smith_normal_form(M: IntegerMatrix) -> tuple[list[int], IntegerMatrix, IntegerMatrix]:
    """Diagonalize M over Z: returns (invariant factors, U, V) with U*M*V diagonal.

    Invariant factors are positive and each divides the next.  Pivot choice is
    the smallest nonzero entry in absolute value, ties broken in row-major
    order, which makes the elimination deterministic.
    """
    A = [list(row) for row in M.entries]
    n, m = M.rows, M.cols
    U = [list(row) for row in IntegerMatrix.identity(n).entries]
    V = [list(row) for row in IntegerMatrix.identity(m).entries]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def pivot_at(t):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = A[i][j]
                if v != 0 and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(n, m):
        pos = pivot_at(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            # clear column t, re-selecting a smaller pivot whenever a
            # remainder turns up
            dirty = False
            for i in range(t + 1, n):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, m):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # divisibility fix: pull a non-divisible entry into row t
            culprit = next(
                (
                    (i, j)
                    for i in range(t + 1, n)
                    for j in range(t + 1, m)
                    if A[i][j] % A[t][t] != 0
                ),
                None,
            )
            if culprit is None:
                break
            add_row(t, culprit[0], 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1

    factors = [A[i][i] for i in range(min(n, m)) if A[i][i] != 0]
    return (
        factors,
        IntegerMatrix.from_rows(U, n),
        IntegerMatrix.from_rows(V, m),
    )


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise DomainError("torsion coefficients must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise DomainError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other: "HomologyGroup") -> "HomologyGroup":
        return HomologyGroup(
            self.free_rank + other.free_rank,
            _recombine_torsion(self.torsion + other.torsion),
        )

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _recombine_torsion(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    # invariant factors of the direct sum via primary decomposition
    by_prime: dict[int, list[int]] = {}
    for c in coeffs:
        for p, e in _factorize(c).items():
            by_prime.setdefault(p, []).append(e)
    for exps in by_prime.values():
        exps.sort(reverse=True)
    length = max((len(v) for v in by_prime.values()), default=0)
    out = []
    for k in range(length):
        d = 1
        for p, exps in by_prime.items():
            if k < len(exps):
                d *= p ** exps[k]
        out.append(d)
    return tuple(reversed(out))


@dataclass(frozen=True)
class ChainComplex:
    """Per-degree generator lists with integer boundary matrices."""

    generators: tuple[tuple[str, ...], ...]
    boundaries: tuple[IntegerMatrix, ...]

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.generators) - 1, 0):
            raise DomainError("need one boundary matrix per positive degree")
        for n, b in enumerate(self.boundaries, start=1):
            if b.rows != len(self.generators[n - 1]) or b.cols != len(self.generators[n]):
                raise DomainError(f"boundary shape mismatch in degree {n}")
        for n in range(2, len(self.generators)):
            if not (self.boundaries[n - 2] @ self.boundaries[n - 1]).is_zero():
                raise DomainError(f"boundary composite nonzero in degree {n}")

    @property
    def top_degree(self) -> int:
        return len(self.generators) - 1

    def boundary(self, n: int) -> IntegerMatrix:
        """Matrix of the boundary map out of degree n (zero off the range)."""
        if 1 <= n <= self.top_degree:
            return self.boundaries[n - 1]
        rows = len(self.generators[n - 1]) if 0 <= n - 1 <= self.top_degree else 0
        cols = len(self.generators[n]) if 0 <= n <= self.top_degree else 0
        return IntegerMatrix.zero(rows, cols)


def normalized_chain_complex(K: SSet, reduced: bool = False) -> ChainComplex:
    """Chains on the nondegenerate generators; the reduced variant drops the
    basepoint generator in degree 0."""
    top = K.max_dim
    gens: list[tuple[str, ...]] = []
    for d in range(top + 1):
        names = list(K.generators(d))
        if reduced and d == 0:
            names.remove(K.basepoint)
        gens.append(tuple(names))
    index = [{name: i for i, name in enumerate(names)} for names in gens]
    boundaries = []
    for n in range(1, top + 1):
        rows, cols = len(gens[n - 1]), len(gens[n])
        mat = [[0] * cols for _ in range(rows)]
        for j, name in enumerate(gens[n]):
            sigma = K.simplex(name)
            for i in range(n + 1):
                f = face(K, sigma, i)
                if f.is_degenerate:
                    continue
                r = index[n - 1].get(f.generator)
                if r is None:
                    continue
                mat[r][j] += (-1) ** i
        boundaries.append(IntegerMatrix.from_rows(mat, cols))
    return ChainComplex(tuple(gens), tuple(boundaries))


def reduced_homology(K: SSet) -> dict[int, HomologyGroup]:
    """Reduced integral homology by degree; trivial degrees are omitted."""
    return dict(_reduced_homology_items(K))


@lru_cache(maxsize=None)
def _reduced_homology_items(K: SSet) -> tuple[tuple[int, HomologyGroup], ...]:
    C = normalized_chain_complex(K, reduced=True)
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for n in range(C.top_degree + 2):
        factors, _, _ = smith_normal_form(C.boundary(n))
        ranks[n] = len(factors)
        # factors of the boundary out of degree n give torsion one degree down
        torsion[n - 1] = tuple(d for d in factors if d > 1)
    out = []
    for n in range(C.top_degree + 1):
        free = len(C.generators[n]) - ranks[n] - ranks.get(n + 1, 0)
        group = HomologyGroup(free, torsion.get(n, ()))
        if not group.is_trivial:
            out.append((n, group))
    return tuple(out)


def euler_characteristic(K: SSet) -> int:
    """Reduced Euler characteristic, from the generator census."""
    C = normalized_chain_complex(K, reduced=True)
    return sum((-1) ** n * len(names) for n, names in enumerate(C.generators))


def homology_to_doc(groups: dict[int, HomologyGroup]) -> list[dict]:
    return [
        {"degree": n, "free_rank": g.free_rank, "torsion": list(g.torsion)}
        for n, g in sorted(groups.items())
    ]
