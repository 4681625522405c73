"""Surface-group representations into SL(2, C) and the Goldman pairing.

Tangent vectors to the character variety at an irreducible ``rho`` are
classes in ``H^1(pi_1, sl2_Ad)``: Ad-twisted 1-cocycles
``u(xy) = u(x) + Ad(rho(x)) u(y)`` modulo ``u_X(x) = Ad(rho(x)) X - X``.
A cocycle is stored by its values on the 2g generators, as a flat complex
vector of length 6g in the sl2 basis ``H = diag(1, -1)``, ``E``, ``F``.

The pairing is the cup product with the trace form evaluated on the 2-cycle

    sum_k [y_1...y_{k-1} | y_k]  -  sum_x [x | x^-1]

of the relator ``y_1 ... y_{4g}``; the second sum closes the chain (each
generator occurs once inverted), and without it the pairing does not vanish
on coboundaries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import BadWord, IllConditioned, NotACocycle, ResampleNeeded

RELATOR_TOL = 1e-10
IRREDUCIBLE_TOL = 1e-6
RANK_TOL = 1e-8
RANK_AMBIGUOUS = 1e-6
#: generators with a larger 2-norm condition number are resampled; beyond
#: this the pairing loses more than eight digits to cancellation in genus 3
MAX_GENERATOR_COND = 100.0

_SL2_BASIS = (
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [0, 0]], dtype=complex),
    np.array([[0, 0], [1, 0]], dtype=complex),
)

#: (transport, strict ordering, close the chain with inverse-letter terms).
#: The first four are the plain chain-level candidates; only the closed cycle
#: passes the coboundary gate, see ``select_convention``.
CONVENTIONS = (
    ("prefix", True, False),
    ("suffix", True, False),
    ("prefix", False, False),
    ("suffix", False, False),
    ("prefix", True, True),
)
DEFAULT_CONVENTION = ("prefix", True, True)


def sl2_vec(X: np.ndarray) -> np.ndarray:
    return np.array([X[0, 0], X[0, 1], X[1, 0]], dtype=complex)


def sl2_mat(v) -> np.ndarray:
    return v[0] * _SL2_BASIS[0] + v[1] * _SL2_BASIS[1] + v[2] * _SL2_BASIS[2]


def trace_form(u, v) -> complex:
    """trace(XY) in sl2 coordinates."""
    return 2 * u[0] * v[0] + u[1] * v[2] + u[2] * v[1]


def _adjugate(A: np.ndarray) -> np.ndarray:
    return np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])


def sl2_inverse(g: np.ndarray) -> np.ndarray:
    """Inverse via the adjugate; exact up to the determinant for 2x2 matrices."""
    return _adjugate(g) / (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0])


def Ad(g: np.ndarray) -> np.ndarray:
    """3x3 matrix of X -> g X g^-1 in the (H, E, F) basis."""
    gi = sl2_inverse(g)
    return np.column_stack([sl2_vec(g @ E @ gi) for E in _SL2_BASIS])


@dataclass(frozen=True)
class Presentation:
    """pi_1 of a closed genus-g surface: a1 b1 a1^-1 b1^-1 ... = 1.

    Generator ``2i`` is a_{i+1}, ``2i+1`` is b_{i+1}; a letter is ``(gen, +-1)``.
    """

    genus: int

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("genus must be at least 2")

    @property
    def ngens(self) -> int:
        return 2 * self.genus

    @property
    def relator(self) -> tuple:
        word = []
        for i in range(self.genus):
            a, b = 2 * i, 2 * i + 1
            word += [(a, 1), (b, 1), (a, -1), (b, -1)]
        return tuple(word)

    def check_word(self, word):
        for x, e in word:
            if not (0 <= x < self.ngens) or e not in (1, -1):
                raise BadWord(f"bad letter {(x, e)!r}")


class Representation:
    """Generator images in SL(2, C)."""

    def __init__(self, presentation: Presentation, mats):
        self.presentation = presentation
        self.mats = tuple(np.array(m, dtype=complex) for m in mats)
        if len(self.mats) != presentation.ngens:
            raise ValueError("wrong number of generator matrices")
        self._inv = tuple(sl2_inverse(m) for m in self.mats)
        self._ad = tuple(Ad(m) for m in self.mats)
        self._ad_inv = tuple(Ad(m) for m in self._inv)

    @property
    def genus(self) -> int:
        return self.presentation.genus

    def letter(self, x: int, e: int) -> np.ndarray:
        return self.mats[x] if e > 0 else self._inv[x]

    def evaluate(self, word) -> np.ndarray:
        self.presentation.check_word(word)
        out = np.eye(2, dtype=complex)
        for x, e in word:
            out = out @ self.letter(x, e)
        return out

    def relator_error(self) -> float:
        return float(np.abs(self.evaluate(self.presentation.relator) - np.eye(2)).max())

    def det_error(self) -> float:
        return max(abs(np.linalg.det(m) - 1) for m in self.mats)

    def is_irreducible(self, tol: float = IRREDUCIBLE_TOL) -> bool:
        """No common invariant line among the generators, and tr[a1, b1] != 2."""
        a, b = self.mats[0], self.mats[1]
        comm = a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)
        if abs(np.trace(comm) - 2) < tol:
            return False
        for m in self.mats:
            _, vecs = np.linalg.eig(m)
            for v in vecs.T:
                v = v / np.linalg.norm(v)
                if all(_is_eigvec(g, v, tol) for g in self.mats):
                    return False
        return True

    def conjugate(self, M: np.ndarray) -> "Representation":
        Mi = np.linalg.inv(M)
        return Representation(self.presentation, [M @ g @ Mi for g in self.mats])

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "generators": [[[[float(z.real), float(z.imag)] for z in row] for row in m]
                           for m in self.mats],
        }

    @classmethod
    def from_json(cls, data) -> "Representation":
        if isinstance(data, str):
            data = json.loads(data)
        mats = [np.array([[complex(*z) for z in row] for row in m]) for m in data["generators"]]
        return cls(Presentation(int(data["genus"])), mats)


def _is_eigvec(g: np.ndarray, v: np.ndarray, tol: float) -> bool:
    w = g @ v
    # 2x2 determinant [v w] vanishes iff w is parallel to v
    cross = v[0] * w[1] - v[1] * w[0]
    return abs(cross) <= tol * max(1.0, np.linalg.norm(w))


def _random_sl2(rng: np.random.Generator) -> np.ndarray:
    while True:
        A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        d = np.linalg.det(A)
        if abs(d) > 0.1:
            return A / np.sqrt(d)


def _mat_basis():
    out = []
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2), dtype=complex)
            E[i, j] = 1
            out.append(E)
    return out


def _null_vectors(M: np.ndarray, k: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(M)
    return vh[-k:].conj().T


def _attempt(g: int, rng: np.random.Generator) -> Representation:
    pres = Presentation(g)
    mats = [_random_sl2(rng) for _ in range(2 * g - 2)]
    P = np.eye(2, dtype=complex)
    for i in range(g - 1):
        a, b = mats[2 * i], mats[2 * i + 1]
        P = P @ a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)
    T = np.linalg.inv(P)
    basis = _mat_basis()
    # [A, B] = T is solvable only when tr(A^-1 T) = tr(A); for det A = 1 this is
    # linear in A, so draw A from that hyperplane
    ell = np.array([[np.trace(_adjugate(E) @ T) - np.trace(E) for E in basis]])
    K = _null_vectors(ell, 3)
    A = (K @ (rng.normal(size=3) + 1j * rng.normal(size=3))).reshape(2, 2)
    dA = np.linalg.det(A)
    if abs(dA) < 1e-3:
        raise ResampleNeeded("degenerate a_g")
    A = A / np.sqrt(dA)
    Ai = np.linalg.inv(A)
    L = np.column_stack([(A @ E @ Ai - T @ E).ravel() for E in basis])
    s = np.linalg.svd(L, compute_uv=False)
    if s[-1] > 1e-8 * s[0]:
        raise ResampleNeeded("commutator equation has no solution")
    K2 = _null_vectors(L, 2)
    B = (K2 @ (rng.normal(size=2) + 1j * rng.normal(size=2))).reshape(2, 2)
    dB = np.linalg.det(B)
    if abs(dB) < 1e-3:
        raise ResampleNeeded("degenerate b_g")
    B = B / np.sqrt(dB)
    rho = Representation(pres, mats + [A, B])
    if max(np.linalg.cond(m) for m in rho.mats) > MAX_GENERATOR_COND:
        raise ResampleNeeded("badly conditioned generator")
    if rho.relator_error() > RELATOR_TOL:
        raise ResampleNeeded(f"relator error {rho.relator_error():.2e}")
    if not rho.is_irreducible():
        raise ResampleNeeded("reducible")
    return rho


def random_representation(g: int, seed: int, max_tries: int = 50) -> Representation:
    """Seeded irreducible representation satisfying the surface relator."""
    last = None
    for offset in range(max_tries):
        rng = np.random.default_rng([seed, offset])
        try:
            return _attempt(g, rng)
        except ResampleNeeded as exc:
            last = exc
    raise ResampleNeeded(f"no representation after {max_tries} attempts: {last}")


# ---------------------------------------------------------------------------
# Fox calculus and cohomology


def fox_derivative(word, x: int, rho: Representation) -> np.ndarray:
    """Ad(rho) applied to the Fox derivative d(word)/dx, as a 3x3 operator."""
    rho.presentation.check_word(word)
    if not (0 <= x < rho.presentation.ngens):
        raise BadWord(f"unknown generator {x}")
    out = np.zeros((3, 3), dtype=complex)
    P = np.eye(2, dtype=complex)
    for y, e in word:
        if y == x:
            if e > 0:
                out += Ad(P)
            else:
                out -= Ad(P @ rho._inv[x])
        P = P @ rho.letter(y, e)
    return out


def relator_map(rho: Representation) -> np.ndarray:
    """3 x 6g matrix u -> u(relator)."""
    pres = rho.presentation
    r = pres.relator
    return np.hstack([fox_derivative(r, x, rho) for x in range(pres.ngens)])


def _numerical_rank(s: np.ndarray) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    rel = s / s[0]
    if np.any((rel > RANK_TOL) & (rel < RANK_AMBIGUOUS)):
        raise IllConditioned(f"singular values in the ambiguous band: {rel}")
    return int(np.sum(rel >= RANK_AMBIGUOUS))


def cocycle_space(rho: Representation) -> np.ndarray:
    """Orthonormal basis of Z^1 as columns (6g x dim)."""
    F = relator_map(rho)
    _, s, vh = np.linalg.svd(F)
    r = _numerical_rank(s)
    return vh[r:].conj().T


def coboundary_space(rho: Representation) -> np.ndarray:
    """Columns u_X for X in the (H, E, F) basis."""
    n = rho.presentation.ngens
    cols = []
    for j in range(3):
        cols.append(np.concatenate([(rho._ad[i] - np.eye(3))[:, j] for i in range(n)]))
    return np.column_stack(cols)


def coboundary(rho: Representation, X) -> np.ndarray:
    return coboundary_space(rho) @ np.asarray(X, dtype=complex)


def cohomology_dimensions(rho: Representation) -> dict:
    Z = cocycle_space(rho)
    B = coboundary_space(rho)
    sB = np.linalg.svd(B, compute_uv=False)
    dB = _numerical_rank(sB)
    return {"Z1": Z.shape[1], "B1": dB, "H1": Z.shape[1] - dB}


def h1_complement(rho: Representation) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of B^1 inside Z^1."""
    Z = cocycle_space(rho)
    B = coboundary_space(rho)
    Qb, _ = np.linalg.qr(B)
    W = Z - Qb @ (Qb.conj().T @ Z)
    u, s, _ = np.linalg.svd(W, full_matrices=False)
    r = _numerical_rank(s)
    return u[:, :r]


def is_cocycle(rho: Representation, u, tol: float = 1e-8) -> bool:
    F = relator_map(rho)
    u = np.asarray(u, dtype=complex)
    scale = np.linalg.norm(F) * max(np.linalg.norm(u), 1e-300)
    return np.linalg.norm(F @ u) <= tol * scale


def _letter_values(rho: Representation, u: np.ndarray) -> list:
    out = []
    for x, e in rho.presentation.relator:
        ux = u[3 * x:3 * x + 3]
        out.append(ux if e > 0 else -rho._ad_inv[x] @ ux)
    return out


def _transports(rho: Representation, kind: str) -> list:
    rel = rho.presentation.relator
    if kind == "prefix":
        out, P = [], np.eye(2, dtype=complex)
        for x, e in rel:
            out.append(Ad(P))
            P = P @ rho.letter(x, e)
        return out
    out, S = [], np.eye(2, dtype=complex)
    for x, e in reversed(rel):
        S = rho.letter(x, e) @ S
        out.append(Ad(S))
    return out[::-1]


def _pairing_terms(u, v, rho, convention):
    transport, strict, closed = convention
    T = _transports(rho, transport)
    lu = [t @ a for t, a in zip(T, _letter_values(rho, u))]
    lv = [t @ b for t, b in zip(T, _letter_values(rho, v))]
    total, scale = 0j, 0.0
    m = len(lu)
    for j in range(m):
        for k in range(j + 1 if strict else j, m):
            t = trace_form(lu[j], lv[k])
            total += t
            scale += np.linalg.norm(lu[j]) * np.linalg.norm(lv[k])
    if closed:
        for x in range(rho.presentation.ngens):
            a, b = u[3 * x:3 * x + 3], v[3 * x:3 * x + 3]
            total += trace_form(a, b)
            scale += np.linalg.norm(a) * np.linalg.norm(b)
    return total, scale


def goldman_pairing(u, v, rho: Representation, convention=DEFAULT_CONVENTION,
                    check: bool = True) -> complex:
    """Cup product of two Ad-twisted cocycles on the fundamental class."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if check and not (is_cocycle(rho, u) and is_cocycle(rho, v)):
        raise NotACocycle("goldman_pairing needs cocycles")
    return _pairing_terms(u, v, rho, convention)[0]


def pairing_scale(u, v, rho: Representation, convention=DEFAULT_CONVENTION) -> float:
    """Sum of absolute term sizes; the reference for relative tolerances."""
    return _pairing_terms(np.asarray(u, dtype=complex), np.asarray(v, dtype=complex), rho,
                          convention)[1]


def coboundary_gate(rho: Representation, convention, rng: np.random.Generator,
                    trials: int = 3) -> float:
    """Largest relative pairing value against coboundaries, both slots."""
    Z = cocycle_space(rho)
    worst = 0.0
    for _ in range(trials):
        u = Z @ (rng.normal(size=Z.shape[1]) + 1j * rng.normal(size=Z.shape[1]))
        X = rng.normal(size=3) + 1j * rng.normal(size=3)
        b = coboundary(rho, X)
        for p, q in ((u, b), (b, u)):
            val, scale = _pairing_terms(p, q, rho, convention)
            worst = max(worst, abs(val) / scale)
    return worst


def select_convention(rho: Representation, seed: int = 0, tol: float = 1e-8):
    """First convention in CONVENTIONS passing the coboundary gate."""
    rng = np.random.default_rng(seed)
    report = {}
    for conv in CONVENTIONS:
        report[conv] = coboundary_gate(rho, conv, rng)
        if report[conv] <= tol:
            return conv, report
    raise NotACocycle(f"no chain convention passes the coboundary gate: {report}")


def goldman_matrix(rho: Representation, basis: np.ndarray | None = None,
                   convention=DEFAULT_CONVENTION) -> np.ndarray:
    """Pairing matrix on a basis of an H^1 complement (columns of ``basis``)."""
    if basis is None:
        basis = h1_complement(rho)
    n = basis.shape[1]
    M = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            M[i, j] = goldman_pairing(basis[:, i], basis[:, j], rho, convention, check=False)
    return M


def transport_cocycle(u, M: np.ndarray) -> np.ndarray:
    """Cocycle for M rho M^-1 corresponding to u for rho."""
    A = Ad(M)
    u = np.asarray(u, dtype=complex)
    return np.concatenate([A @ u[3 * i:3 * i + 3] for i in range(len(u) // 3)])


@dataclass
class GoldmanMatrix:
    """Pairing matrix on an H^1 complement, with its health numbers."""

    matrix: np.ndarray
    basis: np.ndarray

    @classmethod
    def compute(cls, rho: Representation, convention=DEFAULT_CONVENTION) -> "GoldmanMatrix":
        basis = h1_complement(rho)
        return cls(goldman_matrix(rho, basis, convention), basis)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def antisymmetry_error(self) -> float:
        M = self.matrix
        return float(np.abs(M + M.T).max() / np.abs(M).max())

    def det_margin(self) -> float:
        """|det M| / ||M||^n (2-norm); zero means degenerate."""
        M = self.matrix
        return float(abs(np.linalg.det(M)) / np.linalg.norm(M, 2) ** self.dim)

    def det_margin_root(self) -> float:
        """n-th root of ``det_margin``: the geometric mean of the normalized
        singular values, comparable across genera."""
        return self.det_margin() ** (1.0 / self.dim)

    def rank(self) -> int:
        return _numerical_rank(np.linalg.svd(self.matrix, compute_uv=False))
