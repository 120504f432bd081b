"""Deterministic finite automata with output over the alphabet {0..q-1}.

The machine model of automatic sequences used here reads the base-q digits of
n least-significant first and emits the label of the final state.  Every
state has exactly q outgoing edges, and a 0-edge must join states with equal
labels, which makes the output insensitive to leading zeros; both conditions
are enforced whenever an automaton is built or parsed.

Fixture tables keep their original 1-based "State" column in the TSV files;
the parser shifts to 0-based indices and expands multi-label tables into one
automaton per label column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .gf2m import FieldCtx, GF4
from .series import LaurentSeries

__all__ = [
    "Dfao",
    "AutomatonFormatError",
    "parse_tsv",
    "parse_json",
    "parse_automaton_file",
    "emit_dot",
]


class AutomatonFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Dfao:
    ctx: FieldCtx
    next: np.ndarray  # (n_states, q) int32
    out: np.ndarray  # (n_states,) uint8 field codes
    start: int = 0

    def __post_init__(self):
        nxt = np.ascontiguousarray(np.asarray(self.next, dtype=np.int32))
        out = np.ascontiguousarray(np.asarray(self.out, dtype=np.uint8))
        object.__setattr__(self, "next", nxt)
        object.__setattr__(self, "out", out)
        n, q = nxt.shape
        if q != self.ctx.q:
            raise AutomatonFormatError(f"outdegree {q} != field size {self.ctx.q}")
        if out.shape != (n,):
            raise AutomatonFormatError("label vector length mismatch")
        if n == 0:
            raise AutomatonFormatError("automaton needs at least one state")
        if nxt.min() < 0 or nxt.max() >= n:
            raise AutomatonFormatError("edge target out of range")
        if np.any(out >= self.ctx.q):
            raise AutomatonFormatError("state label out of field range")
        if not 0 <= self.start < n:
            raise AutomatonFormatError("start state out of range")
        bad = np.flatnonzero(out[nxt[:, 0]] != out)
        if len(bad):
            raise AutomatonFormatError(
                f"zero-edge label rule violated at state(s) {bad[:5].tolist()}"
            )
        nxt.setflags(write=False)
        out.setflags(write=False)

    @property
    def n_states(self) -> int:
        return len(self.out)

    def eval(self, n: int) -> int:
        """Output at index n: walk digits of n in base q, LSB first."""
        if n < 0:
            raise ValueError("index must be nonnegative")
        q = self.ctx.q
        v = self.start
        while n:
            v = int(self.next[v, n % q])
            n //= q
        return int(self.out[v])

    def series_of(self, N: int) -> LaurentSeries:
        """sum_{n<N} eval(n) t^n, vectorized over digit positions.

        Walking extra leading-zero digits is harmless by the 0-edge rule.
        """
        q = self.ctx.q
        idx = np.arange(N, dtype=np.int64)
        state = np.full(N, self.start, dtype=np.int64)
        digits = 1
        while q**digits < N:
            digits += 1
        shift = idx.copy()
        for _ in range(digits):
            state = self.next[state, shift % q]
            shift //= q
        coeffs = self.out[state]
        return LaurentSeries(self.ctx, 0, coeffs, N)

    # --- structural operations ---------------------------------------------

    def reachable(self) -> "Dfao":
        """Restrict to states reachable from start (BFS in edge order)."""
        order = self._bfs_order()
        remap = {old: new for new, old in enumerate(order)}
        nxt = np.array([[remap[int(self.next[v, d])] for d in range(self.ctx.q)] for v in order])
        return Dfao(self.ctx, nxt, self.out[order], 0)

    def _bfs_order(self) -> list[int]:
        seen = {self.start}
        order = [self.start]
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            for d in range(self.ctx.q):
                w = int(self.next[v, d])
                if w not in seen:
                    seen.add(w)
                    order.append(w)
        return order

    def canonicalize(self) -> "Dfao":
        """BFS renumbering from start with edge order 0..q-1.

        Unique representative of the isomorphism class of the reachable part;
        idempotent.
        """
        return self.reachable()

    def minimize(self) -> "Dfao":
        """Moore partition refinement; the result is canonicalized."""
        a = self.reachable()
        n = a.n_states
        cls = np.unique(a.out, return_inverse=True)[1].astype(np.int64)
        while True:
            sig = np.concatenate([cls[:, None], cls[a.next]], axis=1)
            _, new = np.unique(sig, axis=0, return_inverse=True)
            if len(np.unique(new)) == len(np.unique(cls)):
                break
            cls = new
        reps: dict[int, int] = {}
        for v in range(n):
            reps.setdefault(int(cls[v]), v)
        ids = sorted(reps)
        pos = {c: k for k, c in enumerate(ids)}
        nxt = np.array(
            [[pos[int(cls[a.next[reps[c], d]])] for d in range(a.ctx.q)] for c in ids]
        )
        out = np.array([a.out[reps[c]] for c in ids], dtype=np.uint8)
        return Dfao(a.ctx, nxt, out, pos[int(cls[a.start])]).canonicalize()

    def frobenius_labels(self) -> "Dfao":
        """Same digraph and edges, labels mapped by the 2-Frobenius."""
        return Dfao(self.ctx, self.next.copy(), self.ctx.FROB[self.out], self.start)

    def equivalent(self, other: "Dfao") -> tuple[bool, int | None]:
        """Product BFS; on failure returns the least differing index n.

        The witness is least in digit-length-then-value order, which by the
        0-edge rule is also the least differing n overall.
        """
        if self.ctx != other.ctx:
            raise ValueError("field context mismatch")
        q = self.ctx.q
        start = (self.start, other.start)
        if self.out[self.start] != other.out[other.start]:
            return False, 0
        seen = {start}
        layer = [(start, 0)]  # (pair, value of the LSB-first digit string)
        length = 0
        while layer:
            nxt_layer = []
            scale = q**length
            for d in range(q):
                for (u, v), val in layer:
                    pair = (int(self.next[u, d]), int(other.next[v, d]))
                    if pair in seen:
                        continue
                    seen.add(pair)
                    value = val + d * scale
                    if self.out[pair[0]] != other.out[pair[1]]:
                        return False, value
                    nxt_layer.append((pair, value))
            nxt_layer.sort(key=lambda item: item[1])
            layer = nxt_layer
            length += 1
        return True, None

    # --- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "q": self.ctx.q,
            "start": int(self.start),
            "states": [
                {"out": self.ctx.to_token(int(self.out[v])), "next": [int(x) for x in self.next[v]]}
                for v in range(self.n_states)
            ],
        }

    def key(self) -> bytes:
        """Canonical byte string (isomorphism invariant after canonicalize)."""
        c = self.canonicalize()
        return c.next.tobytes() + c.out.tobytes()

    def __repr__(self):
        return f"<Dfao q={self.ctx.q} states={self.n_states}>"


def parse_json(data: dict | str, ctx: FieldCtx = GF4) -> Dfao:
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("q") != ctx.q:
        raise AutomatonFormatError(f"alphabet size {data.get('q')} != {ctx.q}")
    states = data["states"]
    nxt = np.array([st["next"] for st in states], dtype=np.int32)
    out = np.array([ctx.from_token(st["out"]) for st in states], dtype=np.uint8)
    return Dfao(ctx, nxt, out, int(data.get("start", 0)))


def parse_tsv(text: str, ctx: FieldCtx = GF4) -> list[tuple[str, Dfao]]:
    """Parse a fixture table; returns one automaton per label column.

    Expected header: ``State<TAB>0<TAB>...<TAB>q-1<TAB>label[<TAB>label2...]``
    with 1-based contiguous state numbers, start state 1.  Lines starting
    with '#' are comments.
    """
    rows = [ln for ln in (ln.strip() for ln in text.splitlines()) if ln and not ln.startswith("#")]
    if not rows:
        raise AutomatonFormatError("empty table")
    header = rows[0].split("\t")
    q = ctx.q
    expected = ["State"] + [str(d) for d in range(q)]
    if header[: q + 1] != expected:
        raise AutomatonFormatError(f"bad header {header[:q+1]!r}; expected {expected!r}")
    label_cols = header[q + 1 :]
    if not label_cols:
        raise AutomatonFormatError("table has no label column")
    n = len(rows) - 1
    nxt = np.zeros((n, q), dtype=np.int32)
    outs = np.zeros((len(label_cols), n), dtype=np.uint8)
    seen_states = set()
    for ln in rows[1:]:
        cells = ln.split("\t")
        if len(cells) != q + 1 + len(label_cols):
            raise AutomatonFormatError(f"row has {len(cells)} cells, expected {q+1+len(label_cols)}: {ln!r}")
        st = int(cells[0])
        if not 1 <= st <= n or st in seen_states:
            raise AutomatonFormatError(f"bad or duplicate state number {st}")
        seen_states.add(st)
        for d in range(q):
            tgt = int(cells[1 + d])
            if not 1 <= tgt <= n:
                raise AutomatonFormatError(f"state {st}: edge {d} target {tgt} out of range 1..{n}")
            nxt[st - 1, d] = tgt - 1
        for k, tok in enumerate(cells[q + 1 :]):
            outs[k, st - 1] = ctx.from_token(tok)
    return [(name, Dfao(ctx, nxt.copy(), outs[k], 0)) for k, name in enumerate(label_cols)]


def emit_tsv(a: Dfao, label_name: str = "label") -> str:
    lines = ["\t".join(["State"] + [str(d) for d in range(a.ctx.q)] + [label_name])]
    for v in range(a.n_states):
        cells = [str(v + 1)] + [str(int(a.next[v, d]) + 1) for d in range(a.ctx.q)]
        cells.append(a.ctx.to_token(int(a.out[v])))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def parse_automaton_file(path: str, ctx: FieldCtx = GF4) -> Dfao:
    """Load a .json automaton or a single-label .tsv table."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return parse_json(text if isinstance(text, str) else text, ctx)
    parsed = parse_tsv(text, ctx)
    if len(parsed) != 1:
        raise AutomatonFormatError(
            f"{path} holds {len(parsed)} label columns; extract one (columns: {[n for n, _ in parsed]})"
        )
    return parsed[0][1]


def emit_dot(a: Dfao, omit_self_loops: bool = False, name: str = "dfao") -> str:
    """Graphviz text; edges grouped by (source, target) with digit lists."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=none, label="Start"];']
    for v in range(a.n_states):
        tok = a.ctx.to_token(int(a.out[v]))
        shape = "doublecircle" if v == a.start else "circle"
        lines.append(f'  n{v} [shape={shape}, label="{v + 1}: {tok}"];')
    lines.append(f"  __start -> n{a.start};")
    for v in range(a.n_states):
        grouped: dict[int, list[int]] = {}
        for d in range(a.ctx.q):
            grouped.setdefault(int(a.next[v, d]), []).append(d)
        for w, digits in grouped.items():
            if omit_self_loops and w == v:
                continue
            lbl = ",".join(map(str, digits))
            lines.append(f'  n{v} -> n{w} [label="{lbl}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
