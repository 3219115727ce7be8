"""Language, literal sets, rules and databases.

Atom sets are plain Python ints used as bitmasks: bit ``i`` stands for the atom
with id ``i``.  A :class:`LiteralSet` keeps two such masks.  ``pos`` holds the
atoms occurring as positive literals and ``neg`` the atoms occurring negated,
so a model ``M`` is encoded by the literal set with ``neg = M`` and
``pos = L - M``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from minans import kernels
from minans.errors import NotStrongCover, ParseError, SemanticError

AUX = "__t"
FALSE = "__false"
RESERVED_PREFIX = "__"


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of `mask` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


@dataclass(frozen=True)
class Language:
    """Ordered atom names with an optional extensional partition."""

    names: tuple
    ext_mask: Optional[int] = None
    aux: Optional[int] = field(default=None, compare=False)
    false_id: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})
        if len(self._index) != len(self.names):
            raise SemanticError("duplicate atom names in language")
        if self.aux is None and AUX in self._index:
            object.__setattr__(self, "aux", self._index[AUX])
        if self.false_id is None and FALSE in self._index:
            object.__setattr__(self, "false_id", self._index[FALSE])

    def __len__(self):
        return len(self.names)

    @property
    def atoms(self):
        return [Atom(i, n) for i, n in enumerate(self.names)]

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    @property
    def partitioned(self) -> bool:
        return self.ext_mask is not None

    @property
    def ext(self) -> int:
        return self.ext_mask or 0

    @property
    def int_mask(self) -> int:
        return self.full & ~self.ext

    @property
    def aux_mask(self) -> int:
        return 0 if self.aux is None else 1 << self.aux

    def id(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SemanticError(f"unknown atom {name!r}") from None

    def has(self, name: str) -> bool:
        return name in self._index

    def mask(self, names: Iterable[str]) -> int:
        return mask_of(self.id(n) for n in names)

    def atom_names(self, mask: int) -> list:
        return [self.names[i] for i in bits(mask)]

    def strip(self, mask: int) -> int:
        """Remove the auxiliary atom from `mask`."""
        return mask & ~self.aux_mask

    def extend(self, names: Iterable[str]) -> "Language":
        return Language(tuple(self.names) + tuple(names), self.ext_mask)


@dataclass(frozen=True)
class LiteralSet:
    """A set of literals; ``pos`` = Q⁺ and ``neg`` = Q⁻ as atom masks."""

    pos: int = 0
    neg: int = 0

    @property
    def atoms(self) -> int:
        return self.pos | self.neg

    def consistent(self) -> bool:
        return not self.pos & self.neg

    def is_total(self, lang: Language) -> bool:
        return self.atoms == lang.full

    def is_int_total(self, lang: Language) -> bool:
        return lang.int_mask & ~self.atoms == 0

    def __or__(self, other: "LiteralSet") -> "LiteralSet":
        return LiteralSet(self.pos | other.pos, self.neg | other.neg)

    def __sub__(self, other: "LiteralSet") -> "LiteralSet":
        return LiteralSet(self.pos & ~other.pos, self.neg & ~other.neg)

    def __le__(self, other: "LiteralSet") -> bool:  # type: ignore[override]
        return self.pos & ~other.pos == 0 and self.neg & ~other.neg == 0

    def __lt__(self, other: "LiteralSet") -> bool:  # type: ignore[override]
        return self <= other and self != other

    def __len__(self):
        return self.pos.bit_count() + self.neg.bit_count()

    def flipped(self) -> "LiteralSet":
        return LiteralSet(self.neg, self.pos)

    def restricted(self, mask: int) -> "LiteralSet":
        return LiteralSet(self.pos & mask, self.neg & mask)

    def without(self, mask: int) -> "LiteralSet":
        return LiteralSet(self.pos & ~mask, self.neg & ~mask)

    def key(self):
        """Canonical sort key: size, then signed atom ids in ascending order."""
        lits = sorted([(i, 1) for i in bits(self.pos)] + [(i, 0) for i in bits(self.neg)])
        return (len(lits), lits)

    def format(self, lang: Language, strip_aux: bool = True) -> str:
        pos, neg = self.pos, self.neg
        if strip_aux:
            pos, neg = lang.strip(pos), lang.strip(neg)
        out = []
        for i in range(len(lang)):
            if pos >> i & 1:
                out.append("+" + lang.names[i])
            elif neg >> i & 1:
                out.append("-" + lang.names[i])
        return " ".join(out)

    def to_json(self, lang: Language, strip_aux: bool = True):
        pos, neg = self.pos, self.neg
        if strip_aux:
            pos, neg = lang.strip(pos), lang.strip(neg)
        return {"pos": lang.atom_names(pos), "neg": lang.atom_names(neg)}

    @classmethod
    def parse(cls, text: str, lang: Language) -> "LiteralSet":
        """Parse ``"a, ~b"`` or ``"+a -b"`` style literal lists."""
        pos = neg = 0
        for tok in re.split(r"[\s,]+", text.strip()):
            if not tok:
                continue
            if tok[0] in "~-¬":
                neg |= 1 << lang.id(tok[1:])
            else:
                pos |= 1 << lang.id(tok.lstrip("+"))
        return cls(pos, neg)

    @classmethod
    def of_model(cls, model: int, lang: Language) -> "LiteralSet":
        return cls(lang.full & ~model, model)


def canonical(sets):
    """Sort literal sets canonically and drop duplicates."""
    return sorted(set(sets), key=LiteralSet.key)


def mask_key(mask: int):
    return (mask.bit_count(), list(bits(mask)))


@dataclass(frozen=True)
class Rule:
    antec: int
    negbody: int
    conseq: int
    origin: Optional[tuple] = field(default=None, compare=False, hash=False)

    @property
    def atoms(self) -> int:
        return self.antec | self.negbody | self.conseq

    @property
    def positive(self) -> bool:
        return self.negbody == 0

    @property
    def body_free(self) -> bool:
        return not (self.antec | self.negbody)


@dataclass(frozen=True)
class StratificationInfo:
    level: tuple
    is_stratified: bool


@dataclass(frozen=True)
class Database:
    lang: Language
    rules: tuple

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        full = self.lang.full
        for r in self.rules:
            if r.atoms & ~full:
                raise SemanticError("rule mentions an atom outside the language")
            if not r.conseq:
                raise SemanticError("rule with empty head", *(r.origin or (None, None)))
        object.__setattr__(self, "strat", stratify(self))
        table = kernels.make_table(
            [r.antec for r in self.rules],
            [r.negbody for r in self.rules],
            [r.conseq for r in self.rules],
            len(self.lang),
        )
        object.__setattr__(self, "table", table)

    def __len__(self):
        return len(self.rules)

    def with_rules(self, rules, lang: Optional[Language] = None) -> "Database":
        return Database(lang or self.lang, tuple(rules))

    @property
    def positive(self) -> bool:
        return all(r.positive for r in self.rules)

    @property
    def stratified(self) -> bool:
        return self.strat.is_stratified

    def ext_rules(self) -> list:
        ext = self.lang.ext
        return [r for r in self.rules if r.conseq & ~ext == 0]

    def int_rules(self) -> list:
        ext = self.lang.ext
        return [r for r in self.rules if r.conseq & ~ext != 0]

    def ext_db(self) -> "Database":
        return self.with_rules(self.ext_rules())

    def int_db(self) -> "Database":
        return self.with_rules(self.int_rules())

    def int_lang_ext(self) -> "Database":
        """INT(T) with a unit fact for every extensional atom."""
        facts = [Rule(0, 0, 1 << e) for e in bits(self.lang.ext)]
        return self.with_rules(self.int_rules() + facts)


# -- elementary operations -------------------------------------------------


def pos_of(rule: Rule) -> Rule:
    return Rule(rule.antec, 0, rule.conseq, rule.origin)


def gl_reduct(db: Database, n: int) -> Database:
    return db.with_rules(pos_of(r) for r in db.rules if not r.negbody & n)


def restrict(db: Database, c: LiteralSet) -> Database:
    valued = c.atoms
    return db.with_rules(r for r in db.rules if r.atoms & ~valued == 0)


def is_strong_cover_rules(c: LiteralSet, rules) -> bool:
    for r in rules:
        if r.conseq & ~c.pos == 0 and not r.antec & c.pos and not r.negbody & c.neg:
            return False
    return True


def reduce(db: Database, d: LiteralSet) -> Database:
    """T_D: evaluate the literals of strong cover `d` out of every rule."""
    if not d.consistent() or not is_strong_cover_rules(d, db.rules):
        raise NotStrongCover("reduce needs a strong cover")
    out = []
    for r in db.rules:
        if r.conseq & d.neg or r.antec & d.pos or r.negbody & d.neg:
            continue
        out.append(Rule(r.antec & ~d.neg, r.negbody & ~d.pos, r.conseq & ~d.pos, r.origin))
    return db.with_rules(out)


def is_model(m: int, db: Database) -> bool:
    return db.table.is_model(m)


def stratify(db: Database) -> StratificationInfo:
    """Minimal level function, or ``is_stratified=False`` when none exists."""
    n = len(db.lang)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in db.rules:
        hs = list(bits(r.conseq))
        for h in hs[1:]:
            a, b = find(hs[0]), find(h)
            if a != b:
                parent[max(a, b)] = min(a, b)
    edges = []
    for r in db.rules:
        h = find(next(bits(r.conseq)))
        for a in bits(r.antec):
            edges.append((find(a), h, 0))
        for a in bits(r.negbody):
            edges.append((find(a), h, 1))
    level = [0] * n
    nodes = len({find(i) for i in range(n)})
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        for src, dst, w in edges:
            if level[src] + w > level[dst]:
                level[dst] = level[src] + w
                changed = True
                if level[dst] > nodes:
                    return StratificationInfo(tuple([0] * n), False)
    return StratificationInfo(tuple(level[find(i)] for i in range(n)), True)


# -- text format -----------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>%[^\n]*)"
    r"|(?P<ext>#ext\b)|(?P<arrow>->)|(?P<atom>[a-zA-Z_][a-zA-Z0-9_']*)"
    r"|(?P<punct>[.,|&~])"
)


def _tokens(text):
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, pos - start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            yield kind, m.group(), line, pos - start + 1
        pos = m.end()
    yield "eof", "", line, pos - start + 1


class _Parser:
    def __init__(self, text, allow_reserved):
        self.toks = list(_tokens(text))
        self.i = 0
        self.allow_reserved = allow_reserved
        self.names = []
        self.index = {}
        self.ext = set()
        self.has_ext = False
        self.raw = []  # (antec ids, neg ids, head ids, origin)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(tok[2], tok[3], f"expected {want}, got {got!r}")
        self.i += 1
        return tok

    def atom(self):
        _, name, line, col = self.take("atom")
        if name.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            raise SemanticError(f"atom name {name!r} is reserved", line, col)
        if name not in self.index:
            self.index[name] = len(self.names)
            self.names.append(name)
        return self.index[name]

    def program(self):
        while self.peek()[0] != "eof":
            if self.peek()[0] == "ext":
                self.take()
                self.has_ext = True
                self.ext.add(self.atom())
                while self.peek()[1] == ",":
                    self.take()
                    self.ext.add(self.atom())
            else:
                self.rule()
            self.take("punct", ".")

    def rule(self):
        _, _, line, col = self.peek()
        if self.peek()[0] != "atom" and self.peek()[1] != "~":
            tok = self.peek()
            raise ParseError(tok[2], tok[3], f"expected a rule, got {tok[1] or 'end of input'!r}")
        lits = [self.lit()]
        while self.peek()[1] == "&":
            self.take()
            lits.append(self.lit())
        if self.peek()[0] == "arrow":
            self.take()
            head = [self.atom()]
            while self.peek()[1] == "|":
                self.take()
                head.append(self.atom())
            antec = [a for neg, a in lits if not neg]
            negs = [a for neg, a in lits if neg]
        else:
            # no arrow: the literals read so far form the head
            if len(lits) > 1 or lits[0][0]:
                tok = self.peek()
                raise ParseError(tok[2], tok[3], "expected '->' after rule body")
            head = [lits[0][1]]
            while self.peek()[1] == "|":
                self.take()
                head.append(self.atom())
            antec, negs = [], []
        self.raw.append((antec, negs, head, (line, col)))

    def lit(self):
        neg = False
        if self.peek()[1] == "~":
            self.take()
            neg = True
        return neg, self.atom()


def parse_database(text: str, allow_reserved: bool = False) -> Database:
    """Parse the rule text format and normalize the result."""
    p = _Parser(text, allow_reserved)
    p.program()
    names = list(p.names)
    ext_mask = mask_of(p.ext) if p.has_ext else None
    rules = [Rule(mask_of(a), mask_of(n), mask_of(h), o) for a, n, h, o in p.raw]
    if ext_mask is not None:
        for r in rules:
            if r.conseq & ext_mask and r.conseq & ~ext_mask:
                raise SemanticError("head mixes extensional and intensional atoms", *r.origin)
            if r.conseq & ext_mask and not r.body_free:
                raise SemanticError("extensional atom in the head of an intensional rule", *r.origin)
    return normalize(names, rules, ext_mask)


def normalize(names, rules, ext_mask=None) -> Database:
    """Give every rule with a negative body, and in partitioned mode every
    body-free intensional rule, the auxiliary fact ``__t`` as a body atom."""
    ext = ext_mask or 0

    def needs_aux(r):
        if r.negbody and not r.antec:
            return True
        return ext_mask is not None and r.body_free and r.conseq & ~ext

    names = list(names)
    if any(needs_aux(r) for r in rules) and AUX not in names:
        aux = len(names)
        names.append(AUX)
        bit = 1 << aux
        rules = [Rule(r.antec | bit, r.negbody, r.conseq, r.origin) if needs_aux(r) else r
                 for r in rules]
        rules.append(Rule(0, 0, bit))
        if ext_mask is not None:
            ext_mask |= bit
    return Database(Language(tuple(names), ext_mask), tuple(rules))


def _denormalized(db: Database):
    """Rules as the user wrote them, with the auxiliary device removed."""
    aux = db.lang.aux_mask
    if not aux:
        return list(db.rules)
    out = []
    for r in db.rules:
        if r.conseq == aux and r.body_free:
            continue
        out.append(Rule(r.antec & ~aux, r.negbody, r.conseq, r.origin))
    return out


def format_rule(r: Rule, lang: Language) -> str:
    lits = []
    for i in range(len(lang)):
        if r.antec >> i & 1:
            lits.append(lang.names[i])
        if r.negbody >> i & 1:
            lits.append("~" + lang.names[i])
    head = " | ".join(lang.atom_names(r.conseq))
    return f"{' & '.join(lits)} -> {head}." if lits else f"{head}."


def _text_order(r: Rule) -> list:
    """Atom ids of `r` in the order `format_rule` writes them."""
    body = [i for i in bits(r.antec | r.negbody)]
    return body + [i for i in bits(r.conseq) if i not in body]


def print_database(db: Database, strict: bool = False) -> str:
    """Serialize so that parsing the text gives back an equal database.

    Databases built by rule surgery (restriction, reduction) may mention atoms
    that no rule uses; those are dropped unless `strict` is set.
    """
    lang = db.lang
    aux = lang.aux_mask
    ext = lang.ext & ~aux
    lines = []
    seen = 0
    nxt = 0

    def declare(upto):
        # atoms never mentioned before id `upto` only occur in #ext lines
        nonlocal nxt, seen
        pending = []
        while nxt < upto:
            if not seen >> nxt & 1:
                pending.append(nxt)
                seen |= 1 << nxt
            nxt += 1
        if strict and any(not ext >> i & 1 for i in pending):
            raise SemanticError("atom order cannot be reproduced in the text format")
        pending = [i for i in pending if ext >> i & 1]
        if pending:
            lines.append("#ext " + ", ".join(lang.names[i] for i in pending) + ".")

    for r in _denormalized(db):
        new = [i for i in _text_order(r) if not (seen | aux) >> i & 1]
        # a gap below one of the rule's new atoms forces an #ext line first
        mine = mask_of(new)
        hi = 0
        for i in new:
            if ~(seen | mine) & ((1 << i) - 1) & ~((1 << nxt) - 1):
                hi = i
        if hi:
            declare(hi)
        for i in new:
            if seen >> i & 1:
                continue
            declare(i)
            seen |= 1 << i
            nxt = i + 1
        lines.append(format_rule(r, lang))
    declare(len(lang) - (1 if lang.aux == len(lang) - 1 else 0))
    rest = ext & ~_declared(lines, lang)
    if rest:
        lines.append("#ext " + ", ".join(lang.atom_names(rest)) + ".")
    elif lang.partitioned and not any(l.startswith("#ext") for l in lines):
        raise SemanticError("cannot print a partitioned database without extensional atoms")
    return "\n".join(lines) + ("\n" if lines else "")


def _declared(lines, lang) -> int:
    m = 0
    for l in lines:
        if l.startswith("#ext "):
            m |= lang.mask(n.strip() for n in l[5:-1].split(","))
    return m


def load_database(path, allow_reserved: bool = False) -> Database:
    with open(path, encoding="utf-8") as fh:
        return parse_database(fh.read(), allow_reserved)
