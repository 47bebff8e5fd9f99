"""Exact two-level minimization and the published-equation audit.

Quine-McCluskey prime generation plus Petrick set cover, exact at the scale
used here (up to 8 variables; the audited functions have 2 or 4). The audit
re-derives every published output-bit equation from its defining table and
compares costs mechanically.

Cube notation: one character per variable, '1' plain literal, '0' complemented
literal, '-' absent. Rendering and tie-breaks order cubes by the per-position
rank 1 < 0 < -, so plain literals sort before complemented ones and both
before dashes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arith_core import BitPair, OpKind, apply_op, bitwise_formula, encode_q2b

DC = "-"

_RANK = {"1": 0, "0": 1, "-": 2}


def _cube_key(cube: str) -> tuple[int, ...]:
    return tuple(_RANK[ch] for ch in cube)


def default_names(n: int) -> tuple[str, ...]:
    # two-operand bit tables use the x/y pair convention
    if n == 2:
        return ("x1", "x2")
    if n == 4:
        return ("x1", "x2", "y1", "y2")
    return tuple(f"x{i + 1}" for i in range(n))


class ParseError(Exception):
    pass


class UnsupportedFeature(Exception):
    pass


@dataclass(frozen=True)
class TruthTableSpec:
    """Single-output table over named variables; row index treats variable 0
    as the most significant bit. Outputs are 0, 1, or '-' (don't care)."""

    names: tuple[str, ...]
    outputs: tuple[int | str, ...]

    def __post_init__(self) -> None:
        n = len(self.names)
        if not 1 <= n <= 8:
            raise ValueError(f"variable count {n} outside 1..8")
        if len(set(self.names)) != n:
            raise ValueError("duplicate variable names")
        if len(self.outputs) != 2 ** n:
            raise ValueError(
                f"need {2 ** n} output entries, got {len(self.outputs)}"
            )
        for v in self.outputs:
            if v not in (0, 1, DC):
                raise ValueError(f"bad output value {v!r}")

    @property
    def n_vars(self) -> int:
        return len(self.names)

    def row_bits(self, index: int) -> tuple[int, ...]:
        n = self.n_vars
        return tuple((index >> (n - 1 - j)) & 1 for j in range(n))


def _minterm_cube(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def _cube_covers_index(cube: str, index: int) -> bool:
    n = len(cube)
    for j, ch in enumerate(cube):
        if ch != DC and int(ch) != (index >> (n - 1 - j)) & 1:
            return False
    return True


def cube_literal_count(cube: str) -> int:
    return sum(1 for ch in cube if ch != DC)


@dataclass(frozen=True)
class SopExpr:
    """Sum of products; cubes are irredundant with respect to containment."""

    n_vars: int
    cubes: tuple[str, ...]

    def __post_init__(self) -> None:
        seen = set()
        for c in self.cubes:
            if len(c) != self.n_vars or any(ch not in "01-" for ch in c):
                raise ValueError(f"bad cube {c!r}")
            if c in seen:
                raise ValueError(f"duplicate cube {c!r}")
            seen.add(c)
        for a, b in itertools.permutations(self.cubes, 2):
            if _contains(a, b):
                raise ValueError(f"cube {a!r} already covers {b!r}")

    @property
    def term_count(self) -> int:
        return len(self.cubes)

    @property
    def literal_count(self) -> int:
        return sum(cube_literal_count(c) for c in self.cubes)

    def evaluate(self, bits: tuple[int, ...]) -> int:
        for cube in self.cubes:
            if all(ch == DC or int(ch) == b for ch, b in zip(cube, bits)):
                return 1
        return 0


def _contains(a: str, b: str) -> bool:
    # a covers b: every minterm of b is a minterm of a
    return all(ca == DC or ca == cb for ca, cb in zip(a, b))


def _try_merge(a: str, b: str) -> str | None:
    diff = -1
    for j, (ca, cb) in enumerate(zip(a, b)):
        if ca == cb:
            continue
        if ca == DC or cb == DC or diff >= 0:
            return None
        diff = j
    if diff < 0:
        return None
    return a[:diff] + DC + a[diff + 1 :]


def prime_implicants(spec: TruthTableSpec) -> tuple[str, ...]:
    """All prime implicants of on ∪ dc that cover at least one on-set row."""
    n = spec.n_vars
    on = [i for i, v in enumerate(spec.outputs) if v == 1]
    care = [i for i, v in enumerate(spec.outputs) if v in (1, DC)]
    if not care:
        return ()
    current = {_minterm_cube(i, n) for i in care}
    primes: set[str] = set()
    while current:
        merged: set[str] = set()
        nxt: set[str] = set()
        pool = sorted(current)
        for a, b in itertools.combinations(pool, 2):
            m = _try_merge(a, b)
            if m is not None:
                nxt.add(m)
                merged.add(a)
                merged.add(b)
        primes |= current - merged
        current = nxt
    useful = [p for p in primes if any(_cube_covers_index(p, i) for i in on)]
    return tuple(sorted(useful, key=_cube_key))


def _cover_cost(cubes: tuple[str, ...]) -> tuple:
    ordered = tuple(sorted(cubes, key=_cube_key))
    lits = sum(cube_literal_count(c) for c in ordered)
    return (len(ordered), lits, tuple(_cube_key(c) for c in ordered))


def minimize_exact(spec: TruthTableSpec) -> SopExpr:
    """Minimum-cost prime cover: fewest terms, then fewest literals, then the
    smallest cube list under the rank order (total tie-break)."""
    primes = prime_implicants(spec)
    on = [i for i, v in enumerate(spec.outputs) if v == 1]
    if not on:
        return SopExpr(spec.n_vars, ())
    covers = {m: tuple(p for p in primes if _cube_covers_index(p, m)) for m in on}
    chosen: set[str] = set()
    remaining = set(on)
    for m, cands in covers.items():  # essential primes first
        if len(cands) == 1:
            chosen.add(cands[0])
    for p in chosen:
        remaining -= {m for m in remaining if _cube_covers_index(p, m)}
    if remaining:
        # Petrick: product of per-minterm candidate sums, with absorption
        solutions: set[frozenset[str]] = {frozenset()}
        for m in sorted(remaining):
            grown: set[frozenset[str]] = set()
            for sol in solutions:
                if any(p in sol for p in covers[m]):
                    grown.add(sol)
                    continue
                for p in covers[m]:
                    grown.add(sol | {p})
            solutions = {
                s for s in grown if not any(t < s for t in grown)
            }
        best = min(
            (tuple(chosen | extra) for extra in solutions),
            key=_cover_cost,
        )
    else:
        best = tuple(chosen)
    return SopExpr(spec.n_vars, tuple(sorted(best, key=_cube_key)))


def check_equiv(e: SopExpr, spec: TruthTableSpec) -> bool:
    """Exhaustive comparison on every non-dc row."""
    if e.n_vars != spec.n_vars:
        return False
    for i, want in enumerate(spec.outputs):
        if want == DC:
            continue
        if e.evaluate(spec.row_bits(i)) != want:
            return False
    return True


def render_cube(cube: str, names: tuple[str, ...]) -> str:
    parts = []
    for ch, name in zip(cube, names):
        if ch == "1":
            parts.append(name)
        elif ch == "0":
            parts.append(name + "'")
    return " ".join(parts) if parts else "1"


def render_sop(e: SopExpr, names: tuple[str, ...] | None = None) -> str:
    if names is None:
        names = default_names(e.n_vars)
    if not e.cubes:
        return "0"
    return " + ".join(render_cube(c, names) for c in e.cubes)


@dataclass(frozen=True)
class XorReport:
    """Best-effort XOR factoring of an SOP, with a 2-input gate count.

    The count covers 2-input AND/OR/XOR equivalents; inverters are excluded
    (complemented literals treated as free, as in hand analysis).
    """

    original: SopExpr
    rendered: str
    gates_2in: int
    form: str  # const | single-term | xor-pair | mixed | sop


def _all_cubes(n: int):
    for combo in itertools.product("1" + "0" + DC, repeat=n):
        cube = "".join(combo)
        if cube != DC * n:
            yield cube


def _xor_pair_search(e: SopExpr) -> tuple[str, str] | None:
    """Find cubes P, Q with P xor Q equivalent to e, minimizing literals."""
    n = e.n_vars
    rows = [tuple((i >> (n - 1 - j)) & 1 for j in range(n)) for i in range(2 ** n)]
    target = tuple(e.evaluate(bits) for bits in rows)
    cubes = sorted(_all_cubes(n), key=_cube_key)
    fns = {
        c: tuple(
            int(all(ch == DC or int(ch) == b for ch, b in zip(c, bits)))
            for bits in rows
        )
        for c in cubes
    }
    best: tuple[tuple, str, str] | None = None
    for p, q in itertools.combinations(cubes, 2):
        if tuple(a ^ b for a, b in zip(fns[p], fns[q])) != target:
            continue
        a, b = sorted((p, q), key=_cube_key)
        rank = (
            cube_literal_count(a) + cube_literal_count(b),
            _cube_key(a),
            _cube_key(b),
        )
        if best is None or rank < best[0]:
            best = (rank, a, b)
    if best is None:
        return None
    return best[1], best[2]


def _fxor_pair(c1: str, c2: str) -> tuple[str, int, int, int, int] | None:
    """Match c1 + c2 = common * (u xor v): same dash pattern, exactly two
    positions where both values flip. Returns (common cube, pos_u, pol_u,
    pos_v, pol_v) with x^1 = x, x^0 = x'."""
    diffs = []
    for j, (a, b) in enumerate(zip(c1, c2)):
        if a == b:
            continue
        if a == DC or b == DC:
            return None
        diffs.append(j)
    if len(diffs) != 2:
        return None
    p, q = diffs
    common = "".join(
        DC if j in (p, q) else ch for j, ch in enumerate(c1)
    )
    # c1 = C * xp^a * xq^b ; c2 the complements; sum = C * (xp^a xor xq^(1-b))
    a, b = int(c1[p]), int(c1[q])
    return (common, p, a, q, 1 - b)


def _render_literal(name: str, polarity: int) -> str:
    return name if polarity == 1 else name + "'"


def recognize_xor(e: SopExpr, names: tuple[str, ...] | None = None) -> XorReport:
    """XOR-aware rendering. Tries a whole-expression cube-pair XOR first
    (exhaustive for <= 4 variables), then pairwise factoring of the cube
    list; anything unmatched passes through as plain SOP."""
    if names is None:
        names = default_names(e.n_vars)
    if not e.cubes:
        return XorReport(e, "0", 0, "const")
    if e.cubes == (DC * e.n_vars,):
        return XorReport(e, "1", 0, "const")
    if len(e.cubes) == 1:
        lits = cube_literal_count(e.cubes[0])
        return XorReport(e, render_cube(e.cubes[0], names), lits - 1, "single-term")
    if e.n_vars <= 4:
        pair = _xor_pair_search(e)
        if pair is not None:
            p, q = pair
            sides = []
            for cube in (p, q):
                text = render_cube(cube, names)
                if cube_literal_count(cube) > 1:
                    text = f"({text})"
                sides.append(text)
            gates = (
                (cube_literal_count(p) - 1) + (cube_literal_count(q) - 1) + 1
            )
            return XorReport(e, " ^ ".join(sides), gates, "xor-pair")
    # pairwise pass over the cube list
    pool = list(e.cubes)
    plain: list[str] = []
    factored: list[tuple[str, int]] = []  # rendered term, gate count
    n = e.n_vars
    while pool:
        c1 = pool.pop(0)
        match = None
        for idx, c2 in enumerate(pool):
            got = _fxor_pair(c1, c2)
            if got is not None:
                match = (idx, got)
                break
        if match is None:
            plain.append(c1)
            continue
        idx, (common, p, pol_p, q, pol_q) = match
        c2 = pool.pop(idx)
        # sanity: the factored term must equal the pair it replaces
        pair_expr = SopExpr(n, tuple(sorted((c1, c2), key=_cube_key)))
        for i in range(2 ** n):
            bits = tuple((i >> (n - 1 - j)) & 1 for j in range(n))
            u = bits[p] if pol_p == 1 else 1 - bits[p]
            v = bits[q] if pol_q == 1 else 1 - bits[q]
            common_on = all(
                ch == DC or int(ch) == bit for ch, bit in zip(common, bits)
            )
            assert (int(common_on) & (u ^ v)) == pair_expr.evaluate(bits)
        xor_text = (
            f"{_render_literal(names[p], pol_p)} ^ "
            f"{_render_literal(names[q], pol_q)}"
        )
        common_lits = cube_literal_count(common)
        if common_lits:
            term = f"{render_cube(common, names)} ({xor_text})"
        else:
            term = xor_text
        factored.append((term, 1 + common_lits))
    if not factored:
        gates = sum(cube_literal_count(c) - 1 for c in e.cubes) + len(e.cubes) - 1
        return XorReport(e, render_sop(e, names), gates, "sop")
    terms = [(render_cube(c, names), cube_literal_count(c) - 1) for c in plain]
    terms += factored
    gates = sum(g for _, g in terms) + len(terms) - 1
    return XorReport(e, " + ".join(t for t, _ in terms), gates, "mixed")


def parse_pla(text: str) -> TruthTableSpec:
    """PLA-subset reader: .i N, .o 1, optional .ilb/.ob/.p, cube rows
    '<inputs> <output>', terminated by .e. Unlisted rows default to 0."""
    n: int | None = None
    n_out: int | None = None
    names: tuple[str, ...] | None = None
    assigned: dict[int, tuple[int | str, int]] = {}  # row -> (value, line no)
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("."):
            fields = line.split()
            directive = fields[0]
            if directive == ".i":
                if len(fields) != 2 or not fields[1].isdigit():
                    raise ParseError(f"line {lineno}: bad .i")
                n = int(fields[1])
                if not 1 <= n <= 8:
                    raise ParseError(f"line {lineno}: .i {n} outside 1..8")
            elif directive == ".o":
                if len(fields) != 2 or not fields[1].isdigit():
                    raise ParseError(f"line {lineno}: bad .o")
                n_out = int(fields[1])
                if n_out != 1:
                    raise UnsupportedFeature(
                        f"line {lineno}: only single-output tables "
                        f"(.o 1) are supported, got .o {n_out}"
                    )
            elif directive == ".ilb":
                names = tuple(fields[1:])
            elif directive == ".ob":
                pass  # single output; name is cosmetic
            elif directive == ".p":
                pass  # product-term count; informational
            elif directive == ".e":
                saw_end = True
                break
            else:
                raise UnsupportedFeature(
                    f"line {lineno}: directive {directive} not supported"
                )
            continue
        if n is None or n_out is None:
            raise ParseError(f"line {lineno}: cube row before .i/.o")
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected '<inputs> <output>'")
        in_part, out_part = fields
        if len(in_part) != n:
            raise ParseError(
                f"line {lineno}: input part has {len(in_part)} positions, "
                f"expected {n}"
            )
        if any(ch not in "01-" for ch in in_part):
            raise ParseError(f"line {lineno}: bad input character")
        if out_part not in ("0", "1", "-"):
            raise ParseError(f"line {lineno}: bad output value {out_part!r}")
        value: int | str = DC if out_part == DC else int(out_part)
        for i in range(2 ** n):
            if _cube_covers_index(in_part, i):
                if i in assigned and assigned[i][0] != value:
                    raise ParseError(
                        f"line {lineno}: row {i} conflicts with line "
                        f"{assigned[i][1]}"
                    )
                assigned[i] = (value, lineno)
    if n is None or n_out is None:
        raise ParseError("missing .i or .o header")
    if not saw_end:
        raise ParseError("missing .e terminator")
    if names is None:
        names = default_names(n)
    if len(names) != n:
        raise ParseError(f".ilb lists {len(names)} names, expected {n}")
    outputs = tuple(assigned.get(i, (0, 0))[0] for i in range(2 ** n))
    return TruthTableSpec(names, outputs)


# published output-bit equations: (op id, bit name, op kind, bit index,
# rendered form, literal count as written, 2-input gate count, SOP cube list
# when the form is two-level)
_PUBLISHED: tuple = (
    ("mod4-add", "a1", OpKind.MOD4_ADD, 0, "(x1 ^ y1) ^ (x2 y2)", 4, 3, None),
    ("mod4-add", "a2", OpKind.MOD4_ADD, 1, "x2 ^ y2", 2, 1, None),
    (
        "mod4-mul", "m1", OpKind.MOD4_MUL, 0, "(x1 y2) ^ (x2 y1)", 4, 3,
        ("1-01", "10-1", "011-", "-110"),
    ),
    ("mod4-mul", "m2", OpKind.MOD4_MUL, 1, "x2 y2", 2, 1, ("-1-1",)),
    ("mod4-sub", "s1", OpKind.MOD4_SUB, 0, "(x1 ^ y1) ^ (x2' y2)", 4, 3, None),
    ("mod4-sub", "s2", OpKind.MOD4_SUB, 1, "x2 ^ y2", 2, 1, ("-1-0", "-0-1")),
    ("mod4-neg", "n1", OpKind.MOD4_NEG, 0, "x1 ^ x2", 2, 1, None),
    ("mod4-neg", "n2", OpKind.MOD4_NEG, 1, "x2", 1, 0, ("-1",)),
    ("mod4-dbl", "d1", OpKind.MOD4_DOUBLE, 0, "x2", 1, 0, ("-1",)),
    ("mod4-dbl", "d2", OpKind.MOD4_DOUBLE, 1, "0", 0, 0, ()),
    ("gf4-add", "a1", OpKind.GF4_ADD, 0, "x1 ^ y1", 2, 1, None),
    ("gf4-add", "a2", OpKind.GF4_ADD, 1, "x2 ^ y2", 2, 1, None),
    (
        "gf4-mul", "m1", OpKind.GF4_MUL, 0,
        "x1 y1' y2 + x1 x2' y1 y2' + x1' x2 y1 + x2 y1 y2", 13, 12,
        ("1-01", "1010", "011-", "-111"),
    ),
    ("gf4-mul", "m2", OpKind.GF4_MUL, 1, "(x1 y1) ^ (x2 y2)", 4, 3, None),
)


@dataclass(frozen=True)
class AuditRow:
    op: str
    bit: str
    published_form: str
    published_literals: int
    published_gates_2in: int
    published_sop_literals: int | None
    equivalent: bool
    min_terms: int
    min_literals: int
    min_sop: str


def bit_table_spec(kind: OpKind, bit_index: int) -> TruthTableSpec:
    """Defining table for one output bit of an operation, from the reference
    tables (variable 0 = x1 = msb)."""
    if kind.arity == 1:
        names = default_names(2)
        outputs = []
        for i in range(4):
            x = BitPair((i >> 1) & 1, i & 1)
            out = encode_q2b(apply_op(kind, 2 * x.x1 + x.x2))
            outputs.append(out[bit_index])
        return TruthTableSpec(names, tuple(outputs))
    names = default_names(4)
    outputs = []
    for i in range(16):
        x1, x2, y1, y2 = ((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1)
        a, b = 2 * x1 + x2, 2 * y1 + y2
        out = encode_q2b(apply_op(kind, a, b))
        outputs.append(out[bit_index])
    return TruthTableSpec(names, tuple(outputs))


def _published_bit(kind: OpKind, bit_index: int, bits: tuple[int, ...]) -> int:
    if kind.arity == 1:
        got = bitwise_formula(kind, BitPair(bits[0], bits[1]))
    else:
        got = bitwise_formula(
            kind, BitPair(bits[0], bits[1]), BitPair(bits[2], bits[3])
        )
    return got[bit_index]


def audit_published_forms() -> tuple[AuditRow, ...]:
    """Re-derive each published output-bit equation and compare costs."""
    rows = []
    for op, bit, kind, bit_index, form, lits, gates, sop in _PUBLISHED:
        spec = bit_table_spec(kind, bit_index)
        equivalent = all(
            _published_bit(kind, bit_index, spec.row_bits(i)) == spec.outputs[i]
            for i in range(2 ** spec.n_vars)
        )
        if sop is not None:
            expr = SopExpr(spec.n_vars, tuple(sorted(sop, key=_cube_key)))
            equivalent = equivalent and check_equiv(expr, spec)
            sop_lits = sum(cube_literal_count(c) for c in sop)
        else:
            sop_lits = None
        best = minimize_exact(spec)
        rows.append(
            AuditRow(
                op=op,
                bit=bit,
                published_form=form,
                published_literals=lits,
                published_gates_2in=gates,
                published_sop_literals=sop_lits,
                equivalent=equivalent,
                min_terms=best.term_count,
                min_literals=best.literal_count,
                min_sop=render_sop(best),
            )
        )
    return tuple(rows)
