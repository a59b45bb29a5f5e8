"""The retrieval scheme end to end.

Roles and the objects they hold:

  * a coordinator splits each of the N library files into L subfiles of
    B/L symbols and each subfile into F packets of B/(L*F) symbols,
    then hides the library inside vector polynomials: file n becomes a
    polynomial whose first L coefficients are its subfiles and whose
    last I coefficients are fresh uniform noise;
  * each of the H servers stores only one evaluation of every file
    polynomial plus one evaluation of every key polynomial (whose first
    L coefficients are one-time keys, last I coefficients masks), so
    any I servers combined see pure noise;
  * each user caches packets according to its column of a placement
    delivery array, together with key-padded packet combinations of a
    random file blend p_k, and queries every server with d_k + p_k;
  * each server answers with one multicast symbol stream per ordinary
    array symbol; across servers the streams form codewords of an MDS
    code of dimension I + L, so any J answers survive A corruptions,
    because L is chosen as J - I - 2A.

All containers hold canonical residues as plain ints; field context
comes from the parameter object.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from pathlib import Path

from . import pda as pda_mod
from . import rscode
from .ff import PrimeField
from .pda import Pda, STAR
from .rscode import Codeword, EvalPoints


class ProtocolError(ValueError):
    pass


class DimensionMismatch(ProtocolError):
    pass


class MissingSignals(ProtocolError):
    pass


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SystemParams:
    """Instance sizes and thresholds; q and B may stay unset for analysis-only use.

    N files, K users, H servers; at most A adversarial servers, any I
    servers may collude without learning the library, any J answers
    suffice to decode.  Requires A <= I <= J <= H and I + 2A < J, which
    makes L = J - I - 2A a positive number of data coefficients.
    """

    N: int
    K: int
    H: int
    A: int
    I: int
    J: int
    q: int | None = None
    B: int | None = None
    alphas: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ProtocolError(f"N must be >= 2, got {self.N}")
        if self.K < 1:
            raise ProtocolError(f"K must be >= 1, got {self.K}")
        if self.I < 1:
            raise ProtocolError(f"I must be >= 1, got {self.I}")
        if self.A < 0:
            raise ProtocolError(f"A must be >= 0, got {self.A}")
        if not self.A <= self.I <= self.J <= self.H:
            raise ProtocolError(
                f"need A <= I <= J <= H, got A={self.A}, I={self.I}, J={self.J}, H={self.H}")
        if not self.I + 2 * self.A < self.J:
            raise ProtocolError(
                f"need I + 2A < J, got I={self.I}, A={self.A}, J={self.J}")
        if self.q is not None:
            fld = PrimeField(self.q)  # validates primality
            if self.q <= self.H:
                raise ProtocolError(f"q={self.q} must exceed H={self.H}")
            if self.alphas is None:
                object.__setattr__(self, "alphas", tuple(range(1, self.H + 1)))
            else:
                object.__setattr__(self, "alphas", tuple(self.alphas))
                if len(self.alphas) != self.H:
                    raise ProtocolError(f"need {self.H} evaluation points")
                for a in self.alphas:
                    if not 0 < a < fld.q:
                        raise ProtocolError(f"evaluation point {a} outside [1, q-1]")
                if len(set(self.alphas)) != self.H:
                    raise ProtocolError("evaluation points must be distinct")
        elif self.alphas is not None:
            raise ProtocolError("evaluation points need q")
        if self.B is not None and self.B < 1:
            raise ProtocolError(f"B must be >= 1, got {self.B}")

    @property
    def L(self) -> int:
        return self.J - self.I - 2 * self.A

    @property
    def field(self) -> PrimeField:
        if self.q is None:
            raise ProtocolError("q is not set")
        return PrimeField(self.q)

    @property
    def points(self) -> EvalPoints:
        if self.q is None:
            raise ProtocolError("q is not set")
        return EvalPoints(self.q, self.alphas)


def _dims(params: SystemParams, pda: Pda) -> tuple[int, int]:
    """(subfile length, packet length); checks divisibility of B by L*F."""
    if params.q is None or params.B is None:
        raise ProtocolError("protocol operations need q and B")
    if pda.K != params.K:
        raise DimensionMismatch(f"array has {pda.K} columns, params.K={params.K}")
    L, F = params.L, pda.F
    if params.B % (L * F):
        raise DimensionMismatch(
            f"B={params.B} is not divisible by L*F={L}*{F}={L * F}")
    return params.B // L, params.B // (L * F)


# ---------- data at rest ----------


@dataclass(frozen=True)
class Library:
    """N files of B symbols each."""

    files: tuple[tuple[int, ...], ...]

    @classmethod
    def random(cls, params: SystemParams, rng: random.Random) -> "Library":
        q, B = params.q, params.B
        return cls(tuple(tuple(rng.randrange(q) for _ in range(B))
                         for _ in range(params.N)))

    @classmethod
    def zeros(cls, params: SystemParams) -> "Library":
        return cls(tuple((0,) * params.B for _ in range(params.N)))


@dataclass(frozen=True)
class Randomness:
    """Coordinator randomness: file noise, one-time keys, key masks.

    deltas[n][i]  : B/L symbols of noise for file n, degree slot L+i
    vees[l][s]    : one packet keying data coefficient l of stream s
    lambdas[i][s] : one packet masking noise coefficient i of stream s
    """

    deltas: tuple[tuple[tuple[int, ...], ...], ...]
    vees: tuple[tuple[tuple[int, ...], ...], ...]
    lambdas: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def sample(cls, params: SystemParams, pda: Pda, rng: random.Random) -> "Randomness":
        subL, pkt = _dims(params, pda)
        q = params.q
        N, I, L, S = params.N, params.I, params.L, pda.S
        deltas = tuple(tuple(tuple(rng.randrange(q) for _ in range(subL))
                             for _ in range(I)) for _ in range(N))
        vees = tuple(tuple(tuple(rng.randrange(q) for _ in range(pkt))
                           for _ in range(S)) for _ in range(L))
        lambdas = tuple(tuple(tuple(rng.randrange(q) for _ in range(pkt))
                              for _ in range(S)) for _ in range(I))
        return cls(deltas, vees, lambdas)

    @classmethod
    def zeros(cls, params: SystemParams, pda: Pda) -> "Randomness":
        subL, pkt = _dims(params, pda)
        N, I, L, S = params.N, params.I, params.L, pda.S
        deltas = tuple(tuple((0,) * subL for _ in range(I)) for _ in range(N))
        vees = tuple(tuple((0,) * pkt for _ in range(S)) for _ in range(L))
        lambdas = tuple(tuple((0,) * pkt for _ in range(S)) for _ in range(I))
        return cls(deltas, vees, lambdas)


class PolyBank:
    """Per-slice coefficient tables of the file and key polynomials.

    Slice m of file n has coefficients (subfile_1[m], ..., subfile_L[m],
    noise_1[m], ..., noise_I[m]); slice r of stream s likewise with keys
    then masks.  Packet j of subfile l sits at slices j*pkt .. j*pkt+pkt-1.
    """

    __slots__ = ("file_coeffs", "key_coeffs", "subfile_len", "packet_len")

    def __init__(self, params: SystemParams, pda: Pda,
                 library: Library, randomness: Randomness):
        subL, pkt = _dims(params, pda)
        N, I, L, S = params.N, params.I, params.L, pda.S
        if len(library.files) != N:
            raise DimensionMismatch(f"library has {len(library.files)} files, expected {N}")
        for n, f in enumerate(library.files):
            if len(f) != params.B:
                raise DimensionMismatch(f"file {n + 1} has {len(f)} symbols, expected {params.B}")
        if len(randomness.deltas) != N or any(len(d) != I for d in randomness.deltas):
            raise DimensionMismatch("noise table must be N x I")
        if any(len(v) != subL for d in randomness.deltas for v in d):
            raise DimensionMismatch(f"noise entries must hold {subL} symbols")
        if len(randomness.vees) != L or any(len(v) != S for v in randomness.vees):
            raise DimensionMismatch("key table must be L x S")
        if len(randomness.lambdas) != I or any(len(v) != S for v in randomness.lambdas):
            raise DimensionMismatch("mask table must be I x S")
        self.subfile_len = subL
        self.packet_len = pkt
        self.file_coeffs = [
            [[library.files[n][l * subL + m] for l in range(L)]
             + [randomness.deltas[n][i][m] for i in range(I)]
             for m in range(subL)]
            for n in range(N)
        ]
        self.key_coeffs = [
            [[randomness.vees[l][s][r] for l in range(L)]
             + [randomness.lambdas[i][s][r] for i in range(I)]
             for r in range(pkt)]
            for s in range(S)
        ]


# ---------- per-role containers ----------


@dataclass(frozen=True)
class ServerStore:
    """What one server holds: an evaluation of every file and key polynomial."""

    h: int
    coded_subfiles: tuple[tuple[int, ...], ...]  # N x B/L
    coded_keys: tuple[tuple[int, ...], ...]      # S x B/(L*F)

    def symbol_count(self) -> int:
        return (sum(len(v) for v in self.coded_subfiles)
                + sum(len(v) for v in self.coded_keys))


@dataclass(frozen=True)
class UserCache:
    """User k's cache: its blend vector, star-row packets, keyed packets.

    uncoded[j][n][l] is packet j of subfile l of file n, present for
    every star row j of the user's column.  keys[j][l] is the keyed
    blend packet for ordinary row j.
    """

    k: int
    p: tuple[int, ...]
    uncoded: dict[int, tuple[tuple[tuple[int, ...], ...], ...]]
    keys: dict[int, tuple[tuple[int, ...], ...]]

    def symbol_count(self) -> int:
        """Cached symbols, excluding the N-symbol blend vector."""
        total = 0
        for rows in self.uncoded.values():
            total += sum(len(p) for per_file in rows for p in per_file)
        for per_l in self.keys.values():
            total += sum(len(p) for p in per_l)
        return total


@dataclass(frozen=True)
class Query:
    """What a user sends to every server: its demand shifted by its blend."""

    values: tuple[int, ...]


@dataclass(frozen=True)
class Signal:
    """One server's answer: the query echo and one packet per stream.

    ``honest`` is simulator bookkeeping only; decoders never read it.
    """

    h: int
    queries: tuple[Query, ...]
    payload: tuple[tuple[int, ...], ...]  # S x B/(L*F)
    honest: bool = True

    def payload_symbols(self) -> int:
        return sum(len(p) for p in self.payload)


# ---------- coordinator and servers ----------


def build_storage(params: SystemParams, pda: Pda,
                  library: Library, randomness: Randomness) -> list[ServerStore]:
    bank = PolyBank(params, pda, library, randomness)
    q = params.q
    stores = []
    for h, a in enumerate(params.alphas, start=1):
        coded_subfiles = []
        for per_file in bank.file_coeffs:
            out = []
            for coeffs in per_file:
                acc = 0
                for c in reversed(coeffs):
                    acc = (acc * a + c) % q
                out.append(acc)
            coded_subfiles.append(tuple(out))
        coded_keys = []
        for per_key in bank.key_coeffs:
            out = []
            for coeffs in per_key:
                acc = 0
                for c in reversed(coeffs):
                    acc = (acc * a + c) % q
                out.append(acc)
            coded_keys.append(tuple(out))
        stores.append(ServerStore(h, tuple(coded_subfiles), tuple(coded_keys)))
    return stores


def place_user(params: SystemParams, pda: Pda, library: Library,
               randomness: Randomness, k: int, p_k) -> UserCache:
    subL, pkt = _dims(params, pda)
    N, L = params.N, params.L
    q = params.q
    if not 1 <= k <= params.K:
        raise ProtocolError(f"user index {k} outside [1..{params.K}]")
    p = tuple(v % q for v in p_k)
    if len(p) != N:
        raise DimensionMismatch(f"blend vector must hold {N} symbols")
    k0 = k - 1
    uncoded = {}
    keys = {}
    for j in range(pda.F):
        e = pda.entries[j][k0]
        if e is STAR:
            uncoded[j] = tuple(
                tuple(tuple(library.files[n][l * subL + j * pkt: l * subL + j * pkt + pkt])
                      for l in range(L))
                for n in range(N))
        else:
            per_l = []
            for l in range(L):
                off = l * subL + j * pkt
                packet = []
                for r in range(pkt):
                    acc = randomness.vees[l][e - 1][r]
                    for n in range(N):
                        pn = p[n]
                        if pn:
                            acc += pn * library.files[n][off + r]
                    packet.append(acc % q)
                per_l.append(tuple(packet))
            keys[j] = tuple(per_l)
    return UserCache(k=k, p=p, uncoded=uncoded, keys=keys)


def make_query(params: SystemParams, d_k, p_k) -> Query:
    q = params.q
    if q is None:
        raise ProtocolError("q is not set")
    if len(d_k) != params.N or len(p_k) != params.N:
        raise DimensionMismatch(f"demand and blend vectors must hold {params.N} symbols")
    return Query(tuple((d + p) % q for d, p in zip(d_k, p_k)))


def server_signal(params: SystemParams, pda: Pda,
                  store: ServerStore, queries) -> Signal:
    subL, pkt = _dims(params, pda)
    N, q = params.N, params.q
    queries = tuple(queries)
    if len(queries) != params.K:
        raise DimensionMismatch(f"need {params.K} queries, got {len(queries)}")
    payload = []
    for s in range(1, pda.S + 1):
        acc = list(store.coded_keys[s - 1])
        for (j, v) in pda.occurrences(s):
            qv = queries[v].values
            base = j * pkt
            for r in range(pkt):
                t = acc[r]
                for n in range(N):
                    c = qv[n]
                    if c:
                        t += c * store.coded_subfiles[n][base + r]
                acc[r] = t % q
        payload.append(tuple(acc))
    return Signal(h=store.h, queries=queries, payload=tuple(payload), honest=True)


# ---------- adversaries ----------


@dataclass(frozen=True)
class UniformRandom:
    """Replace every symbol with a fresh uniform draw."""

    seed: int = 0

    label = "uniform_random"

    def corrupt(self, flat, q, rng):
        return [rng.randrange(q) for _ in flat]


@dataclass(frozen=True)
class ZeroPayload:
    """Send all zeros of the honest size."""

    label = "zero_payload"

    def corrupt(self, flat, q, rng):
        return [0] * len(flat)


@dataclass(frozen=True)
class HonestPlusConstant:
    """Shift every honest symbol by a fixed constant."""

    c: int = 1

    label = "honest_plus_constant"

    def corrupt(self, flat, q, rng):
        return [(x + self.c) % q for x in flat]


@dataclass(frozen=True)
class HonestPermutedSlices:
    """Send the honest symbols cyclically rotated by one slice."""

    label = "honest_permuted_slices"

    def corrupt(self, flat, q, rng):
        if len(flat) < 2:
            return list(flat)
        return list(flat[1:]) + [flat[0]]


ALL_STRATEGIES = (UniformRandom(), ZeroPayload(), HonestPlusConstant(1),
                  HonestPermutedSlices())

STRATEGY_NAMES = {
    "uniform_random": UniformRandom,
    "zero_payload": ZeroPayload,
    "honest_plus_constant": HonestPlusConstant,
    "honest_permuted_slices": HonestPermutedSlices,
}


def strategy_key(strategy) -> str:
    """Stable text form, used for deterministic per-config seeding."""
    parts = [strategy.label]
    if isinstance(strategy, UniformRandom):
        parts.append(str(strategy.seed))
    if isinstance(strategy, HonestPlusConstant):
        parts.append(str(strategy.c))
    return ":".join(parts)


def adversary_signal(params: SystemParams, pda: Pda, strategy,
                     store: ServerStore, queries,
                     rng: random.Random | None = None) -> Signal:
    """A corrupted answer computed only from the server's own store and queries."""
    honest = server_signal(params, pda, store, queries)
    if rng is None:
        rng = random.Random(f"{params.seed}:adv:{store.h}:{strategy_key(strategy)}")
    sizes = [len(p) for p in honest.payload]
    flat = [x for p in honest.payload for x in p]
    corrupted = strategy.corrupt(flat, params.q, rng)
    if len(corrupted) != len(flat):
        raise ProtocolError("corruption must preserve the payload size")
    payload = []
    pos = 0
    for n in sizes:
        payload.append(tuple(corrupted[pos:pos + n]))
        pos += n
    return Signal(h=store.h, queries=honest.queries, payload=tuple(payload), honest=False)


def adversary_content(params: SystemParams, strategy, store: ServerStore,
                      rng: random.Random | None = None) -> ServerStore:
    """Corrupted stored contents of the honest shape, from the store alone."""
    if rng is None:
        rng = random.Random(f"{params.seed}:content:{store.h}:{strategy_key(strategy)}")
    sub_sizes = [len(v) for v in store.coded_subfiles]
    key_sizes = [len(v) for v in store.coded_keys]
    flat = [x for v in store.coded_subfiles for x in v]
    flat += [x for v in store.coded_keys for x in v]
    corrupted = strategy.corrupt(flat, params.q, rng)
    if len(corrupted) != len(flat):
        raise ProtocolError("corruption must preserve the content size")
    pos = 0
    subs = []
    for n in sub_sizes:
        subs.append(tuple(corrupted[pos:pos + n]))
        pos += n
    keys = []
    for n in key_sizes:
        keys.append(tuple(corrupted[pos:pos + n]))
        pos += n
    return ServerStore(h=store.h, coded_subfiles=tuple(subs), coded_keys=tuple(keys))


# ---------- decoding ----------


def user_decode(params: SystemParams, pda: Pda, cache: UserCache,
                d_k, signals, queries) -> list[int]:
    """Recover the demanded blend of files from any J signals, <= A corrupt.

    Per stream and slice, the J payload symbols are decoded as one MDS
    codeword of dimension I + L, yielding the keyed multicast symbols.
    The user then subtracts its keyed blend packet and, for every other
    occurrence of the stream symbol, the interfering blend packet it
    can rebuild from star-row cache entries.
    """
    subL, pkt = _dims(params, pda)
    N, L, I, q = params.N, params.L, params.I, params.q
    queries = tuple(queries)
    if len(queries) != params.K:
        raise DimensionMismatch(f"need {params.K} queries, got {len(queries)}")
    k0 = cache.k - 1
    expect = tuple((d + p) % q for d, p in zip(d_k, cache.p))
    if len(d_k) != N:
        raise DimensionMismatch(f"demand vector must hold {N} symbols")
    if queries[k0].values != expect:
        raise ProtocolError(f"query of user {cache.k} does not match demand + blend")

    by_h: dict[int, Signal] = {}
    for sig in signals:
        if sig.h in by_h:
            raise MissingSignals(f"duplicate signal from server {sig.h}")
        if not 1 <= sig.h <= params.H:
            raise MissingSignals(f"signal origin {sig.h} outside [1..{params.H}]")
        by_h[sig.h] = sig
    if len(by_h) != params.J:
        raise MissingSignals(f"need signals from {params.J} servers, got {len(by_h)}")

    points = params.points
    col = pda.column(k0)
    needed = sorted({e for e in col if e is not STAR})
    decoded: dict[int, list[list[int]]] = {}
    for s in needed:
        per_l = [[0] * pkt for _ in range(L)]
        for r in range(pkt):
            cw = Codeword(I + L, {h: sig.payload[s - 1][r] for h, sig in by_h.items()})
            msg, _flags = rscode.decode(cw, points, params.A)
            for l in range(L):
                per_l[l][r] = msg[l]
        decoded[s] = per_l

    d = tuple(v % q for v in d_k)
    out = [0] * params.B
    for j in range(pda.F):
        e = col[j]
        if e is STAR:
            rows = cache.uncoded[j]
            for l in range(L):
                off = l * subL + j * pkt
                for r in range(pkt):
                    acc = 0
                    for n in range(N):
                        c = d[n]
                        if c:
                            acc += c * rows[n][l][r]
                    out[off + r] = acc % q
        else:
            per_l = decoded[e]
            keyed = cache.keys[j]
            others = [(u, v) for (u, v) in pda.occurrences(e) if (u, v) != (j, k0)]
            for l in range(L):
                off = l * subL + j * pkt
                for r in range(pkt):
                    val = per_l[l][r] - keyed[l][r]
                    for (u, v) in others:
                        qv = queries[v].values
                        rows = cache.uncoded[u]
                        acc = 0
                        for n in range(N):
                            c = qv[n]
                            if c:
                                acc += c * rows[n][l][r]
                        val -= acc
                    out[off + r] = val % q
    return out


def recover_library(params: SystemParams, contents) -> Library:
    """Rebuild the whole library from any J stored contents, <= A corrupt.

    Slice by slice, the J evaluations of each file polynomial form an
    MDS codeword of dimension I + L whose first L coefficients are the
    subfile symbols.
    """
    if params.q is None or params.B is None:
        raise ProtocolError("protocol operations need q and B")
    if hasattr(contents, "items"):
        by_h = dict(contents)
    else:
        by_h = {}
        for store in contents:
            if store.h in by_h:
                raise ProtocolError(f"duplicate contents for server {store.h}")
            by_h[store.h] = store
    if len(by_h) != params.J:
        raise ProtocolError(f"need contents of {params.J} servers, got {len(by_h)}")
    L, I, N = params.L, params.I, params.N
    if params.B % L:
        raise DimensionMismatch(f"B={params.B} is not divisible by L={L}")
    subL = params.B // L
    for h, st in by_h.items():
        if len(st.coded_subfiles) != N or any(len(v) != subL for v in st.coded_subfiles):
            raise DimensionMismatch(f"contents of server {h} have the wrong shape")
    points = params.points
    files = []
    for n in range(N):
        symbols = [0] * params.B
        for m in range(subL):
            cw = Codeword(I + L, {h: st.coded_subfiles[n][m] for h, st in by_h.items()})
            msg, _flags = rscode.decode(cw, points, params.A)
            for l in range(L):
                symbols[l * subL + m] = msg[l]
        files.append(tuple(symbols))
    return Library(tuple(files))


# ---------- configuration ----------


def params_from_json(doc: dict, base_dir: str | Path | None = None
                     ) -> tuple[SystemParams, Pda | None]:
    """Build (SystemParams, Pda) from a config mapping.

    Required integer fields: N, K, H, A, I, J.  Optional: q, B, seed.
    Optional "pda": a file path, {"man": {"k":.., "t":.., "seed":..}},
    or {"grid": "..."} with the text format inline.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    known = {"N", "K", "H", "A", "I", "J", "q", "B", "seed", "pda"}
    for key in doc:
        if key not in known:
            raise ConfigError(f"unknown config field {key!r}")
    kwargs = {}
    for name in ("N", "K", "H", "A", "I", "J"):
        if name not in doc:
            raise ConfigError(f"missing config field {name!r}")
        v = doc[name]
        if not isinstance(v, int) or isinstance(v, bool):
            raise ConfigError(f"config field {name!r} must be an integer, got {v!r}")
        kwargs[name] = v
    for name in ("q", "B", "seed"):
        if name in doc:
            v = doc[name]
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(f"config field {name!r} must be an integer, got {v!r}")
            kwargs[name] = v
    try:
        params = SystemParams(**kwargs)
    except (ProtocolError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    spec = doc.get("pda")
    if spec is None:
        return params, None
    if isinstance(spec, str):
        path = Path(spec)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read pda file {path}: {exc}") from exc
        arr = pda_mod.parse(text)
    elif isinstance(spec, dict) and "man" in spec:
        man = spec["man"]
        if not isinstance(man, dict) or not {"k", "t"} <= set(man):
            raise ConfigError('pda "man" needs integer fields "k" and "t"')
        arr = pda_mod.man_pda(man["k"], man["t"], man.get("seed"))
    elif isinstance(spec, dict) and "grid" in spec:
        arr = pda_mod.parse(spec["grid"])
    else:
        raise ConfigError('config field "pda" must be a path, {"man": ...} or {"grid": ...}')
    if arr.K != params.K:
        raise ConfigError(f"pda has {arr.K} columns but params.K={params.K}")
    return params, arr


def load_config(path: str | Path) -> tuple[SystemParams, Pda | None]:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return params_from_json(doc, base_dir=path.parent)


def with_seed(params: SystemParams, seed: int) -> SystemParams:
    return replace(params, seed=seed)
