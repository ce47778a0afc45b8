"""Line-oriented spec files.

::

    %pqg-spec 1
    name: P2
    conductor: 1

    [objects]
    1 2

    [basis]
    e12  1 1 2 2          # label, then the grading quad as object labels

    [mult]
    e12 e12 e12  1        # e_i e_j has this coefficient on e_k

    [coproduct]
    e12 e11 e12  1        # Delta(e_a) has this coefficient on e_p (x) e_q

Further sections: ``counit``/``phi``/``psi`` (``a scalar``), ``antipode``/``star``
(``a b scalar``), ``space`` (``v r t``, the vertical grading), ``inner``
(``v w scalar``), ``module`` (first line ``over: A|dual|double``, then
``a v w scalar``) and ``comodule`` (``v w a scalar``).  The scalar takes the
rest of the line.  ``#`` starts a comment.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .algebra import PartialAlgebra, Vec
from .hopf import QuantumGroupoid
from .scalars import ScalarSyntaxError, field as scalar_field, format_scalar, parse_scalar

HEADER = "%pqg-spec 1"
HEADER_KEYS = ("name", "conductor", "expect")
SECTIONS = (
    "objects", "basis", "mult", "coproduct", "counit", "antipode", "star", "phi", "psi",
    "space", "inner", "module", "comodule",
)
OVER = ("A", "dual", "double")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


class ValidationError(ValueError):
    def __init__(self, diagnostics: list[tuple[int, int, str]]):
        super().__init__("\n".join(f"{l}:{c}: {m}" for l, c, m in diagnostics))
        self.diagnostics = diagnostics

    @property
    def line(self) -> int:
        return self.diagnostics[0][0]

    @property
    def col(self) -> int:
        return self.diagnostics[0][1]


@dataclass
class SpecDocument:
    conductor: int
    objects: list[str]
    basis: list[str]
    grade: list[tuple[int, int, int, int]]
    mult: dict
    name: str = ""
    expect: list[str] = field(default_factory=list)
    delta: list[dict] | None = None
    counit: Vec | None = None
    antipode: list[Vec] | None = None
    star: list[Vec] | None = None
    phi: Vec | None = None
    psi: Vec | None = None
    space: list[tuple[str, int, int]] | None = None
    inner: list[Vec] | None = None
    module_over: str | None = None
    module: dict | None = None  # (a_label, v) -> Vec over the space
    comodule: list[dict] | None = None  # v -> {(w, a): c}

    def algebra(self) -> PartialAlgebra:
        return PartialAlgebra(list(self.objects), list(self.basis), list(self.grade), dict(self.mult),
                              self.conductor, self.star)

    def quantum_groupoid(self) -> QuantumGroupoid:
        return QuantumGroupoid(self.algebra(), self.delta, name=self.name, counit=self.counit,
                               antipode=self.antipode, phi=self.phi, psi=self.psi,
                               meta={"expect": list(self.expect)})

    @property
    def has_rep(self) -> bool:
        return self.space is not None


# -- tokenizing ----------------------------------------------------------------------

def _tokens(line: str) -> list[tuple[str, int]]:
    out = []
    i = 0
    n = len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


class _Reader:
    def __init__(self, conductor_override: int | None):
        self.override = conductor_override
        self.diag: list[tuple[int, int, str]] = []
        self.header: dict = {"expect": []}
        self.sections: dict[str, list] = {}
        self.section_line: dict[str, int] = {}
        self.over: tuple[str, int, int] | None = None

    def fail(self, line: int, col: int, msg: str):
        self.diag.append((line, col, msg))


def _read(text: str, conductor: int | None) -> _Reader:
    rd = _Reader(conductor)
    lines = text.splitlines()
    first = next((k for k, ln in enumerate(lines) if _strip_comment(ln).strip()), None)
    if first is None or lines[first].strip() != HEADER:
        raise ParseError(f"expected header {HEADER!r}", (first or 0) + 1, 1)
    current = None
    for k in range(first + 1, len(lines)):
        lineno = k + 1
        raw = _strip_comment(lines[k]).rstrip()
        if not raw.strip():
            continue
        s = raw.strip()
        col0 = len(raw) - len(raw.lstrip()) + 1
        if s.startswith("["):
            if not s.endswith("]"):
                raise ParseError("unterminated section header", lineno, col0 + len(s))
            name = s[1:-1].strip()
            if name not in SECTIONS:
                rd.fail(lineno, col0 + 1, f"unknown section {name!r}")
                current = "?"
                continue
            if name in rd.sections:
                rd.fail(lineno, col0 + 1, f"duplicate section {name!r}")
            current = name
            rd.sections[name] = []
            rd.section_line[name] = lineno
            continue
        if current is None:
            if ":" not in s:
                raise ParseError("expected 'key: value'", lineno, col0)
            key, val = s.split(":", 1)
            key = key.strip()
            if key not in HEADER_KEYS:
                rd.fail(lineno, col0, f"unknown key {key!r}")
                continue
            vcol = col0 + s.index(":") + 1 + (len(val) - len(val.lstrip()))
            if key == "expect":
                rd.header["expect"].append(val.strip())
            elif key in rd.header:
                rd.fail(lineno, col0, f"duplicate key {key!r}")
            else:
                rd.header[key] = (val.strip(), lineno, vcol)
            continue
        if current == "?":
            continue
        if current == "module" and not rd.sections["module"] and rd.over is None and s.startswith("over:"):
            val = s[5:].strip()
            rd.over = (val, lineno, col0 + 5 + (len(s[5:]) - len(s[5:].lstrip())))
            continue
        rd.sections[current].append((lineno, raw))
    return rd


# -- parsing -------------------------------------------------------------------------

_ARITY = {
    "basis": 5, "mult": 3, "coproduct": 3, "counit": 1, "antipode": 2, "star": 2, "phi": 1, "psi": 1,
    "space": 3, "inner": 2, "module": 3, "comodule": 3,
}


def parse_spec(text: str, conductor: int | None = None) -> SpecDocument:
    """Parse and validate; ``conductor`` overrides the declared one."""
    rd = _read(text, conductor)
    hdr = rd.header
    n = conductor
    if "conductor" in hdr:
        val, ln, col = hdr["conductor"]
        try:
            declared = int(val)
            if declared < 1:
                raise ValueError
        except ValueError:
            raise ParseError(f"conductor must be a positive integer, got {val!r}", ln, col) from None
        n = n or declared
    n = n or 1
    fld = scalar_field(n)

    def scalar(text_: str, ln: int, col: int):
        try:
            return parse_scalar(text_, fld)
        except ScalarSyntaxError as exc:
            raise ParseError(str(exc), ln, col + exc.col) from None

    def rows(name: str):
        """(line, [(token, col)] fixed tokens, scalar text, scalar col) for each entry."""
        out = []
        k = _ARITY[name]
        for ln, raw in rd.sections.get(name, []):
            toks = _tokens(raw)
            need = k if name in ("basis", "space") else k + 1
            if len(toks) < need:
                raise ParseError(f"expected {need} fields in [{name}]", ln, len(raw) + 1)
            if name in ("basis", "space"):
                if len(toks) > k:
                    raise ParseError(f"unexpected field in [{name}]", ln, toks[k][1])
                out.append((ln, toks, None, None))
            else:
                scol = toks[k][1]
                out.append((ln, toks[:k], raw[scol - 1:].strip(), scol))
        return out

    # objects
    objects: list[str] = []
    obj_index: dict[str, int] = {}
    for ln, raw in rd.sections.get("objects", []):
        for tok, col in _tokens(raw):
            if tok in obj_index:
                rd.fail(ln, col, f"duplicate object {tok!r}")
                continue
            obj_index[tok] = len(objects)
            objects.append(tok)
    if "objects" not in rd.sections or not objects:
        rd.fail(rd.section_line.get("objects", 1), 1, "missing [objects]")

    # basis
    basis: list[str] = []
    grade: list[tuple] = []
    b_index: dict[str, int] = {}
    for ln, raw in rd.sections.get("basis", []):
        toks = _tokens(raw)
        if len(toks) != 5:
            rd.fail(ln, toks[0][1] if toks else 1,
                    f"basis vector needs exactly one grading quadruple, got {len(toks) - 1} fields")
            continue
        lab, col = toks[0]
        if lab in b_index:
            rd.fail(ln, col, f"duplicate basis label {lab!r}")
            continue
        q = []
        for tok, c in toks[1:]:
            if tok not in obj_index:
                rd.fail(ln, c, f"unknown object {tok!r}")
            q.append(obj_index.get(tok, 0))
        b_index[lab] = len(basis)
        basis.append(lab)
        grade.append(tuple(q))
    if "basis" not in rd.sections:
        rd.fail(1, 1, "missing [basis]")

    def idx(tok: str, col: int, ln: int, table: dict, what: str) -> int | None:
        if tok not in table:
            rd.fail(ln, col, f"unknown {what} {tok!r}")
            return None
        return table[tok]

    seen: set = set()

    def once(key, ln, col) -> bool:
        if key in seen:
            rd.fail(ln, col, "duplicate entry")
            return False
        seen.add(key)
        return True

    mult: dict = {}
    for ln, toks, st, sc in rows("mult"):
        ids = [idx(t, c, ln, b_index, "basis label") for t, c in toks]
        val = scalar(st, ln, sc)
        if None in ids or not once(("mult",) + tuple(ids), ln, toks[0][1]):
            continue
        if val:
            mult.setdefault((ids[0], ids[1]), {})[ids[2]] = val

    def vec_section(name: str) -> Vec | None:
        if name not in rd.sections:
            return None
        out: Vec = {}
        for ln, toks, st, sc in rows(name):
            i = idx(toks[0][0], toks[0][1], ln, b_index, "basis label")
            val = scalar(st, ln, sc)
            if i is None or not once((name, i), ln, toks[0][1]):
                continue
            if val:
                out[i] = val
        return out

    def map_section(name: str) -> list[Vec] | None:
        if name not in rd.sections:
            return None
        out: list[Vec] = [dict() for _ in basis]
        for ln, toks, st, sc in rows(name):
            ids = [idx(t, c, ln, b_index, "basis label") for t, c in toks]
            val = scalar(st, ln, sc)
            if None in ids or not once((name,) + tuple(ids), ln, toks[0][1]):
                continue
            if val:
                out[ids[0]][ids[1]] = val
        return out

    delta = None
    if "coproduct" in rd.sections:
        delta = [dict() for _ in basis]
        for ln, toks, st, sc in rows("coproduct"):
            ids = [idx(t, c, ln, b_index, "basis label") for t, c in toks]
            val = scalar(st, ln, sc)
            if None in ids or not once(("coproduct",) + tuple(ids), ln, toks[0][1]):
                continue
            if val:
                delta[ids[0]][(ids[1], ids[2])] = val

    doc = SpecDocument(
        conductor=n, objects=objects, basis=basis, grade=grade, mult=mult,
        name=hdr["name"][0] if "name" in hdr else "", expect=list(hdr["expect"]),
        delta=delta, counit=vec_section("counit"), antipode=map_section("antipode"),
        star=map_section("star"), phi=vec_section("phi"), psi=vec_section("psi"),
    )
    _parse_rep(rd, doc, obj_index, b_index, rows, scalar, idx, once)
    if rd.diag:
        raise ValidationError(sorted(rd.diag))
    try:
        doc.algebra()
    except ValueError as exc:
        raise ValidationError([(rd.section_line.get("basis", 1), 1, str(exc))]) from None
    return doc


def _rep_label_ok(label: str, over: str, b_index: dict) -> bool:
    if over == "A":
        return label in b_index
    if over == "dual":
        return label.startswith("w.") and label[2:] in b_index
    a, sep, w = label.partition("|")
    return bool(sep) and a in b_index and w.startswith("w.") and w[2:] in b_index


def _parse_rep(rd: _Reader, doc: SpecDocument, obj_index, b_index, rows, scalar, idx, once):
    rep_sections = [s for s in ("inner", "module", "comodule") if s in rd.sections]
    if "space" not in rd.sections:
        for s in rep_sections:
            rd.fail(rd.section_line[s], 1, f"[{s}] needs a [space] section")
        return
    space = []
    v_index: dict[str, int] = {}
    for ln, toks, _, _ in rows("space"):
        lab, col = toks[0]
        if lab in v_index:
            rd.fail(ln, col, f"duplicate space label {lab!r}")
            continue
        r = idx(toks[1][0], toks[1][1], ln, obj_index, "object")
        t = idx(toks[2][0], toks[2][1], ln, obj_index, "object")
        v_index[lab] = len(space)
        space.append((lab, r or 0, t or 0))
    doc.space = space
    m = len(space)
    if "inner" in rd.sections:
        doc.inner = [dict() for _ in range(m)]
        for ln, toks, st, sc in rows("inner"):
            ids = [idx(t, c, ln, v_index, "space label") for t, c in toks]
            val = scalar(st, ln, sc)
            if None in ids or not once(("inner",) + tuple(ids), ln, toks[0][1]):
                continue
            if val:
                doc.inner[ids[0]][ids[1]] = val
    if "module" in rd.sections:
        if rd.over is None:
            rd.fail(rd.section_line["module"], 1, "[module] must start with 'over: A|dual|double'")
            over = "A"
        else:
            over, ln, col = rd.over
            if over not in OVER:
                rd.fail(ln, col, f"unknown algebra {over!r}")
                over = "A"
        doc.module_over = over
        doc.module = {}
        for ln, toks, st, sc in rows("module"):
            (a, ac), (v, vc), (w, wc) = toks
            val = scalar(st, ln, sc)
            if not _rep_label_ok(a, over, b_index):
                rd.fail(ln, ac, f"unknown basis label {a!r} of the {over} algebra")
                continue
            vi = idx(v, vc, ln, v_index, "space label")
            wi = idx(w, wc, ln, v_index, "space label")
            if vi is None or wi is None or not once(("module", a, vi, wi), ln, ac):
                continue
            if val:
                doc.module.setdefault((a, vi), {})[wi] = val
    if "comodule" in rd.sections:
        doc.comodule = [dict() for _ in range(m)]
        for ln, toks, st, sc in rows("comodule"):
            vi = idx(toks[0][0], toks[0][1], ln, v_index, "space label")
            wi = idx(toks[1][0], toks[1][1], ln, v_index, "space label")
            ai = idx(toks[2][0], toks[2][1], ln, b_index, "basis label")
            val = scalar(st, ln, sc)
            if None in (vi, wi, ai) or not once(("comodule", vi, wi, ai), ln, toks[0][1]):
                continue
            if val:
                doc.comodule[vi][(wi, ai)] = val


# -- emitting ------------------------------------------------------------------------

def _line(*parts: str) -> str:
    return " ".join(parts)


def from_quantum_groupoid(qg: QuantumGroupoid, name: str | None = None) -> SpecDocument:
    A = qg.algebra
    return SpecDocument(
        conductor=A.conductor, objects=list(A.objects), basis=list(A.basis), grade=list(A.grade),
        mult={k: dict(v) for k, v in A.mult.items()}, name=qg.name if name is None else name,
        expect=list(qg.meta.get("expect", [])),
        delta=None if qg.delta is None else [la.clean(t) for t in qg.delta],
        counit=None if qg.counit is None else la.clean(qg.counit),
        antipode=None if qg.antipode is None else [la.clean(v) for v in qg.antipode],
        star=None if A.star is None else [la.clean(v) for v in A.star],
        phi=None if qg.phi is None else la.clean(qg.phi),
        psi=None if qg.psi is None else la.clean(qg.psi),
    )


def emit_spec(x) -> str:
    """Canonical text for a SpecDocument, QuantumGroupoid or PartialAlgebra."""
    if isinstance(x, PartialAlgebra):
        x = QuantumGroupoid(x, None)
    doc = x if isinstance(x, SpecDocument) else from_quantum_groupoid(x)
    O, B = doc.objects, doc.basis
    out = [HEADER]
    if doc.name:
        out.append(f"name: {doc.name}")
    out.append(f"conductor: {doc.conductor}")
    for e in doc.expect:
        out.append(f"expect: {e}")
    out += ["", "[objects]", " ".join(O), "", "[basis]"]
    out += [_line(B[i], *(O[k] for k in g)) for i, g in enumerate(doc.grade)]
    out += ["", "[mult]"]
    for (i, j) in sorted(doc.mult):
        for k in sorted(doc.mult[(i, j)]):
            out.append(_line(B[i], B[j], B[k], format_scalar(doc.mult[(i, j)][k])))
    if doc.delta is not None:
        out += ["", "[coproduct]"]
        for a, t in enumerate(doc.delta):
            for (p, q) in sorted(t):
                out.append(_line(B[a], B[p], B[q], format_scalar(t[(p, q)])))
    for name in ("counit", "antipode", "star", "phi", "psi"):
        val = getattr(doc, name)
        if val is None:
            continue
        out += ["", f"[{name}]"]
        if isinstance(val, dict):
            out += [_line(B[a], format_scalar(val[a])) for a in sorted(val)]
        else:
            for a, v in enumerate(val):
                out += [_line(B[a], B[b], format_scalar(v[b])) for b in sorted(v)]
    if doc.space is not None:
        S = [s[0] for s in doc.space]
        out += ["", "[space]"]
        out += [_line(lab, O[r], O[t]) for lab, r, t in doc.space]
        if doc.inner is not None:
            out += ["", "[inner]"]
            for v, row in enumerate(doc.inner):
                out += [_line(S[v], S[w], format_scalar(row[w])) for w in sorted(row)]
        if doc.module is not None:
            out += ["", "[module]", f"over: {doc.module_over}"]
            order = _module_label_order(doc)
            for (a, v) in sorted(doc.module, key=lambda k: (order.get(k[0], (len(order), k[0])), k[1])):
                row = doc.module[(a, v)]
                out += [_line(a, S[v], S[w], format_scalar(row[w])) for w in sorted(row)]
        if doc.comodule is not None:
            out += ["", "[comodule]"]
            for v, t in enumerate(doc.comodule):
                out += [_line(S[v], S[w], B[a], format_scalar(t[(w, a)])) for (w, a) in sorted(t)]
    return "\n".join(out) + "\n"


def _module_label_order(doc: SpecDocument) -> dict:
    B = doc.basis
    if doc.module_over == "A":
        return {b: (i, "") for i, b in enumerate(B)}
    if doc.module_over == "dual":
        return {"w." + b: (i, "") for i, b in enumerate(B)}
    return {f"{a}|w.{b}": (i * len(B) + j, "") for i, a in enumerate(B) for j, b in enumerate(B)}


# -- representation sections <-> RepObject ----------------------------------------------

def rep_object(doc: SpecDocument, acting: PartialAlgebra | None = None):
    """The representation space of ``doc``; ``acting`` resolves module labels."""
    from .repcat import RepObject

    V = RepObject([(r, t) for _, r, t in doc.space], labels=[s[0] for s in doc.space], inner=doc.inner)
    if doc.comodule is not None:
        V.coaction = [dict(t) for t in doc.comodule]
    if doc.module is not None:
        if acting is None:
            raise ValueError("module labels need the acting algebra")
        index = acting.index
        missing = sorted({a for a, _ in doc.module if a not in index})
        if missing:
            raise ValidationError([(0, 0, f"label {a!r} is not a basis vector of the {doc.module_over} algebra")
                                   for a in missing])
        V.action = [[dict() for _ in range(V.dim)] for _ in range(acting.dim)]
        for (a, v), row in doc.module.items():
            V.action[index[a]][v] = dict(row)
    return V


def attach_rep(doc: SpecDocument, V, over: str | None, acting: PartialAlgebra | None) -> SpecDocument:
    """A copy of ``doc`` whose representation sections describe ``V``."""
    from dataclasses import replace

    module = None
    if V.action is not None:
        module = {}
        for a, cols in enumerate(V.action):
            for v, img in enumerate(cols):
                img = la.clean(img)
                if img:
                    module[(acting.basis[a], v)] = img
    labels = V.labels or [f"v{k}" for k in range(V.dim)]
    space = [(labels[k], r, t) for k, (r, t) in enumerate(V.grade)]
    coaction = None if V.coaction is None else [la.clean(t) for t in V.coaction]
    return replace(doc, space=space, inner=V.inner, module_over=over if module is not None else None,
                   module=module, comodule=coaction)
