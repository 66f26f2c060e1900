"""Command line front end.

Identity files use a small line-based grammar::

    # comment
    vars X Y
    id X*Y*X*Y + X^2*Y^2
    id [X,Y]*X = X*[X,Y]

``id a = b`` records the identity a - b.  Commands print a short text
summary by default or a stable JSON document with --json; exit status
is 0 for a verdict, 2 for parse or usage errors, 3 when a resource
limit was hit.
"""

import argparse
import json
import sys

from .decide import (DecideOptions, IdentitySet, PresentedWitness,
                     decide_all, presented_scan_check)
from .errors import ResourceLimitError
from .finitering import Presented, family_from_json, family_json, make_ring
from .freealg import NcPoly, format_ncpoly
from .gsb import CompletionLimits, complete
from .oracle import SearchBounds, identity_digest, witness_search
from .theorems import (MinRingCertificate, central_decide, freshman_decide,
                       is_multilinear, min_ring_certify, multilinear_decide,
                       power_identity_decide, univariate_decide)

SCHEMA = 1


class ParseError(Exception):
    def __init__(self, line, col, msg):
        self.line = line
        self.col = col
        super().__init__("line %d, column %d: %s" % (line, col, msg))


# ---------------------------------------------------------------------------
# tokenizer and expression parser

_SYMBOLS = "+-*^()[],="


def _tokenize(text, line_no):
    """Tokens of one logical line: (kind, value, column)."""
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), col))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], col))
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(("sym", ch, col))
            i += 1
            continue
        raise ParseError(line_no, col, "unexpected character %r" % ch)
    return toks


class _ExprParser:
    def __init__(self, toks, varmap, line_no):
        self.toks = toks
        self.varmap = varmap
        self.line = line_no
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError(self.line, len(self.toks) and self.toks[-1][2] or 1,
                             "unexpected end of expression")
        self.pos += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t[0] != "sym" or t[1] != sym:
            raise ParseError(self.line, t[2], "expected %r" % sym)

    def fail(self, msg):
        t = self.peek()
        col = t[2] if t else (self.toks[-1][2] if self.toks else 1)
        raise ParseError(self.line, col, msg)

    def expr(self):
        neg = False
        t = self.peek()
        if t and t[0] == "sym" and t[1] in "+-":
            self.take()
            neg = t[1] == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            t = self.peek()
            if t and t[0] == "sym" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc - rhs if t[1] == "-" else acc + rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t and t[0] == "sym" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        acc = self.atom()
        while True:
            t = self.peek()
            if t and t[0] == "sym" and t[1] == "^":
                self.take()
                e = self.take()
                if e[0] != "int":
                    raise ParseError(self.line, e[2],
                                     "exponent must be a non-negative integer")
                acc = acc ** e[1]
            else:
                return acc

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return NcPoly.const(t[1])
        if t[0] == "name":
            if t[1] not in self.varmap:
                raise ParseError(self.line, t[2],
                                 "undeclared variable %r" % t[1])
            return NcPoly.var(self.varmap[t[1]])
        if t[0] == "sym" and t[1] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if t[0] == "sym" and t[1] == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return a * b - b * a
        raise ParseError(self.line, t[2], "unexpected token %r" % (t[1],))


def parse_expression(text, varmap, line_no=1):
    toks = _tokenize(text, line_no)
    if not toks:
        raise ParseError(line_no, 1, "empty expression")
    p = _ExprParser(toks, varmap, line_no)
    out = p.expr()
    if p.peek() is not None:
        p.fail("trailing input after expression")
    return out


def parse_identity_file(text):
    """IdentitySet from the ``vars``/``id`` line grammar."""
    varmap = {}
    polys = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize(raw, ln)
        if not toks:
            continue
        head = toks[0]
        if head[0] == "name" and head[1] == "vars":
            if varmap:
                raise ParseError(ln, head[2], "duplicate vars declaration")
            for t in toks[1:]:
                if t[0] != "name":
                    raise ParseError(ln, t[2], "variable name expected")
                if t[1] in varmap:
                    raise ParseError(ln, t[2], "duplicate variable %r" % t[1])
                varmap[t[1]] = len(varmap) + 1
            if not varmap:
                raise ParseError(ln, head[2], "vars needs at least one name")
            continue
        if head[0] == "name" and head[1] == "id":
            if not varmap:
                raise ParseError(ln, head[2], "vars must come before id lines")
            body = toks[1:]
            split = None
            depth = 0
            for k, t in enumerate(body):
                if t[0] != "sym":
                    continue
                if t[1] in "([":
                    depth += 1
                elif t[1] in ")]":
                    depth -= 1
                elif t[1] == "=" and depth == 0:
                    split = k
                    break
            if split is None:
                p = _ExprParser(body, varmap, ln)
                poly = p.expr()
                if p.peek() is not None:
                    p.fail("trailing input after expression")
            else:
                lhs = _ExprParser(body[:split], varmap, ln)
                left = lhs.expr()
                if lhs.peek() is not None:
                    lhs.fail("trailing input before '='")
                rhs = _ExprParser(body[split + 1:], varmap, ln)
                right = rhs.expr()
                if rhs.peek() is not None:
                    rhs.fail("trailing input after expression")
                poly = left - right
            polys.append(poly)
            continue
        raise ParseError(ln, head[2], "expected 'vars' or 'id'")
    if not varmap:
        raise ParseError(1, 1, "missing vars declaration")
    return IdentitySet(len(varmap), tuple(polys)), varmap


def render_identities(ids, names):
    lines = ["vars " + " ".join(names)]
    for P in ids.polys:
        lines.append("id " + format_ncpoly(P, names=names))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# output documents

def _pair_json(pair):
    if pair is None:
        return None
    return [list(map(int, pair[0])), list(map(int, pair[1]))]


def verdict_doc(command, verdict):
    doc = {"schema": SCHEMA, "command": command, "verdict": verdict.kind}
    if verdict.kind == "witness":
        doc["prime"] = verdict.prime
        doc["ring"] = family_json(verdict.family)
        doc["params"] = list(verdict.params)
        doc["pair"] = _pair_json(verdict.pair)
        if isinstance(verdict.witness, PresentedWitness):
            doc["scan_length"] = verdict.witness.scan_length
    elif verdict.kind == "limit":
        doc["stage"] = verdict.stage
        doc["limit"] = verdict.limit
        doc["detail"] = verdict.detail
    return doc


def _emit(doc, as_json, lines):
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _verdict_lines(doc):
    if doc["verdict"] == "forces":
        return ["Forces: every ring satisfying the identities is commutative."]
    if doc["verdict"] == "witness":
        out = ["Witness: noncommutative model found (p = %d)." % doc["prime"],
               "  ring: %s" % json.dumps(doc["ring"])]
        if doc.get("params"):
            out.append("  params: %s" % (tuple(doc["params"]),))
        if doc.get("pair"):
            out.append("  noncommuting pair: %s" % (doc["pair"],))
        return out
    return ["ResourceLimit at stage %r (limit %r)." % (doc["stage"], doc["limit"])]


def _exit_for(doc):
    return 3 if doc["verdict"] == "limit" else 0


# ---------------------------------------------------------------------------
# command implementations

def _options(args):
    opts = DecideOptions()
    if getattr(args, "max_eval", None):
        opts.eval_cap = args.max_eval
    if getattr(args, "max_gsb_steps", None):
        opts.gsb_limits = CompletionLimits(max_steps=args.max_gsb_steps)
    if getattr(args, "no_fast_path", False):
        opts.fast_paths = False
    return opts


def _load_ids(path):
    with open(path) as fh:
        return parse_identity_file(fh.read())


def _cmd_decide(args):
    ids, _ = _load_ids(args.file)
    verdict = decide_all(ids, _options(args))
    doc = verdict_doc("decide", verdict)
    doc["digest"] = identity_digest(ids)
    _emit(doc, args.json, _verdict_lines(doc))
    return _exit_for(doc)


def _simple_witness_doc(command, hit):
    if hit is None:
        return {"schema": SCHEMA, "command": command, "verdict": "forces"}
    p, ring = hit
    return {"schema": SCHEMA, "command": command, "verdict": "witness",
            "prime": p, "ring": family_json(ring.family), "params": [],
            "pair": _pair_json(None if ring.is_commutative() is True
                               else ring.is_commutative())}


def _cmd_multilinear(args):
    ids, _ = _load_ids(args.file)
    for P in ids.polys:
        if not is_multilinear(P):
            raise ParseError(1, 1, "identities must be homogeneous multilinear")
    doc = _simple_witness_doc("multilinear", multilinear_decide(list(ids.polys)))
    _emit(doc, args.json, _verdict_lines(doc))
    return _exit_for(doc)


def _cmd_univariate(args):
    P = parse_expression(args.poly, {"X": 1})
    doc = _simple_witness_doc("univariate", univariate_decide(P))
    _emit(doc, args.json, _verdict_lines(doc))
    return _exit_for(doc)


def _cmd_central(args):
    Q = parse_expression(args.poly, {"X": 1})
    doc = _simple_witness_doc("central", central_decide(Q))
    _emit(doc, args.json, _verdict_lines(doc))
    return _exit_for(doc)


def _parse_set(text):
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise ParseError(1, 1, "--set expects comma-separated integers")


def _cmd_power(args):
    doc = _simple_witness_doc("power", power_identity_decide(_parse_set(args.set)))
    _emit(doc, args.json, _verdict_lines(doc))
    return _exit_for(doc)


def _cmd_freshman(args):
    doc = _simple_witness_doc("freshman", freshman_decide(_parse_set(args.set)))
    _emit(doc, args.json, _verdict_lines(doc))
    return _exit_for(doc)


def _cmd_check(args):
    ids, _ = _load_ids(args.file)
    try:
        fam = family_from_json(json.loads(args.ring))
    except (ValueError, KeyError) as err:
        raise ParseError(1, 1, "bad ring spec: %s" % err)
    ring = make_ring(fam)
    opts = _options(args)
    results = []
    all_ok = True
    for P in ids.polys:
        res = ring.is_identity(P, eval_cap=opts.eval_cap)
        if res is True:
            results.append({"identity": format_ncpoly(P), "holds": True})
        else:
            all_ok = False
            results.append({"identity": format_ncpoly(P), "holds": False,
                            "counterexample": [list(map(int, e)) for e in res]})
    doc = {"schema": SCHEMA, "command": "check", "ring": family_json(fam),
           "all_hold": all_ok, "results": results}
    lines = ["%s: %s" % (r["identity"], "holds" if r["holds"]
                         else "fails at %s" % r["counterexample"])
             for r in results]
    _emit(doc, args.json, lines)
    return 0


def _cmd_certify(args):
    ids, _ = _load_ids(args.file)
    results = []
    all_ok = True
    for P in ids.polys:
        cert = min_ring_certify(P, args.p)
        if isinstance(cert, MinRingCertificate):
            results.append({"identity": format_ncpoly(P), "certified": True})
        else:
            all_ok = False
            results.append({"identity": format_ncpoly(P), "certified": False,
                            "stage": cert.stage, "point": list(cert.point),
                            "value": [list(map(int, cert.value))]})
    doc = {"schema": SCHEMA, "command": "certify", "p": args.p,
           "all_certified": all_ok, "results": results}
    lines = ["%s: %s" % (r["identity"],
                         "certified" if r["certified"]
                         else "not an identity (stage %s)" % r["stage"])
             for r in results]
    _emit(doc, args.json, lines)
    return 0


def _cmd_verify(args):
    with open(args.witness) as fh:
        wdoc = json.load(fh)
    ids, _ = _load_ids(args.file)
    fam = family_from_json(wdoc["ring"])
    opts = _options(args)
    if isinstance(fam, Presented):
        varmap = {"X": 1, "Y": 2}
        gens = [parse_expression(g, varmap) for g in fam.generators]
        basis = complete(gens, fam.p, fam.a, opts.gsb_limits)
        ok = presented_scan_check(ids, basis, wdoc.get("scan_length", 3), opts)
    else:
        ring = make_ring(fam)
        ok = (ring.is_commutative() is not True
              and all(ring.is_identity(P, eval_cap=opts.eval_cap) is True
                      for P in ids.polys))
    doc = {"schema": SCHEMA, "command": "verify", "ring": wdoc["ring"],
           "valid": bool(ok)}
    _emit(doc, args.json,
          ["witness %s" % ("confirmed" if ok else "REJECTED")])
    return 0 if ok else 1


def _cmd_oracle(args):
    ids, _ = _load_ids(args.file)
    bounds = SearchBounds(max_p=args.max_p, max_n=args.max_n,
                          max_trunc_k=args.max_trunc_k,
                          eval_cap=_options(args).eval_cap)
    res = witness_search(ids, bounds)
    doc = {"schema": SCHEMA, "command": "oracle",
           "digest": identity_digest(ids),
           "witness": None if res.family is None else family_json(res.family),
           "skipped": [family_json(f) for f in res.skipped]}
    lines = (["no witness within bounds"] if res.family is None
             else ["witness: %s" % json.dumps(doc["witness"])])
    _emit(doc, args.json, lines)
    return 0


# ---------------------------------------------------------------------------
# argument wiring

def _add_common(sp):
    sp.add_argument("--json", action="store_true",
                    help="emit a stable JSON document")
    sp.add_argument("--max-eval", type=int, default=None, metavar="N",
                    help="evaluation cap for exhaustive ring checks")
    sp.add_argument("--max-gsb-steps", type=int, default=None, metavar="N",
                    help="completion step cap for presented quotients")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="commforce",
        description="Decide whether polynomial identities force rings "
                    "to be commutative.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("decide", help="full decision on an identity file")
    d.add_argument("file")
    d.add_argument("--no-fast-path", action="store_true",
                   help="skip the closed-form special cases")
    _add_common(d)
    d.set_defaults(fn=_cmd_decide)

    m = sub.add_parser("multilinear", help="multilinear identity sets")
    m.add_argument("file")
    _add_common(m)
    m.set_defaults(fn=_cmd_multilinear)

    u = sub.add_parser("univariate", help="a single identity P(X) = 0")
    u.add_argument("poly")
    _add_common(u)
    u.set_defaults(fn=_cmd_univariate)

    c = sub.add_parser("central", help="the identity [Q(X), Y] = 0")
    c.add_argument("poly")
    _add_common(c)
    c.set_defaults(fn=_cmd_central)

    pw = sub.add_parser("power", help="(XY)^n = X^n Y^n for n in --set")
    pw.add_argument("--set", required=True)
    _add_common(pw)
    pw.set_defaults(fn=_cmd_power)

    fr = sub.add_parser("freshman", help="(X+Y)^n = X^n + Y^n for n in --set")
    fr.add_argument("--set", required=True)
    _add_common(fr)
    fr.set_defaults(fn=_cmd_freshman)

    ck = sub.add_parser("check", help="test identities on a named ring")
    ck.add_argument("--ring", required=True,
                    help='family JSON, e.g. {"family": "U", "p": 2}')
    ck.add_argument("file")
    _add_common(ck)
    ck.set_defaults(fn=_cmd_check)

    ce = sub.add_parser("certify",
                        help="certify identities on the minimal witness ring")
    ce.add_argument("--p", type=int, required=True)
    ce.add_argument("file")
    _add_common(ce)
    ce.set_defaults(fn=_cmd_certify)

    ve = sub.add_parser("verify", help="re-verify an emitted witness document")
    ve.add_argument("witness")
    ve.add_argument("file")
    _add_common(ve)
    ve.set_defaults(fn=_cmd_verify)

    orc = sub.add_parser("oracle", help="bounded brute-force witness search")
    orc.add_argument("file")
    orc.add_argument("--max-p", type=int, default=5)
    orc.add_argument("--max-n", type=int, default=3)
    orc.add_argument("--max-trunc-k", type=int, default=4)
    _add_common(orc)
    orc.set_defaults(fn=_cmd_oracle)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except ResourceLimitError as err:
        doc = {"schema": SCHEMA, "command": args.cmd, "verdict": "limit",
               "stage": err.stage, "limit": err.limit, "detail": err.detail}
        _emit(doc, getattr(args, "json", False), _verdict_lines(doc))
        return 3


if __name__ == "__main__":
    sys.exit(main())
