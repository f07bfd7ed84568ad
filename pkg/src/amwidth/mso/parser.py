"""Recursive-descent parser for the MSO surface grammar.

ASCII aliases: forall, exists, &, |, !, ->, in, cl, indep, = and the set
terms ``T \\ {e}`` / ``T + {e}``; the unicode forms of the connectives
are accepted too.  ``is_circuit``, ``is_base`` and ``spanning`` expand to
their definitions at parse time.  Grammar reference: docs/mso-grammar.md.
"""

from ..errors import FormulaSyntaxError
from . import formulas as F

__all__ = ["parse", "tokenize"]

_KEYWORDS = {
    "exists",
    "forall",
    "in",
    "cl",
    "indep",
    "ind",
    "is_circuit",
    "is_base",
    "spanning",
}

_UNICODE = {
    "∃": "exists",
    "∀": "forall",
    "∈": "in",
    "∧": "&",
    "∨": "|",
    "¬": "!",
    "→": "->",
    "⇒": "->",
    "∖": "\\",
    "∪": "+",
}


def _is_name(tok):
    return bool(tok) and (tok[0].isalpha() or tok[0] == "_") and tok not in _KEYWORDS


def tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _UNICODE:
            word = _UNICODE[ch]
            tokens.append((word if word in _KEYWORDS else word, i))
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(("->", i))
            i += 2
            continue
        if text.startswith("!=", i):
            tokens.append(("!=", i))
            i += 2
            continue
        if ch in "()&|!\\+={},:":
            tokens.append((ch, i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((text[i:j], i))
            i = j
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append((None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def here(self):
        return self.tokens[self.pos][1]

    def take(self, expected=None):
        tok, at = self.tokens[self.pos]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", at)
        self.pos += 1
        return tok

    def fail(self, message):
        raise FormulaSyntaxError(message, self.here())

    # formula := quantified
    def formula(self):
        return self.quantified()

    def quantified(self):
        if self.peek() in ("exists", "forall"):
            kind = self.take()
            var = self.variable()
            if self.peek() == ":":
                self.take()
            inner = self.quantified()
            return F.Exists(var, inner) if kind == "exists" else F.Forall(var, inner)
        return self.implies()

    def implies(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return F.Implies(left, self.implies())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = F.Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = F.And(left, self.unary())
        return left

    def unary(self):
        if self.peek() == "!":
            self.take()
            return F.Not(self.unary())
        if self.peek() in ("exists", "forall"):
            # quantifier scope extends as far right as possible
            return self.quantified()
        return self.atom()

    def variable(self):
        tok = self.peek()
        if tok is None or not (tok[0].isalpha() or tok[0] == "_") or tok in _KEYWORDS:
            self.fail(f"expected a variable name, found {tok!r}")
        return self.take()

    def atom(self):
        tok = self.peek()
        if tok == "(":
            start = self.pos
            self.take("(")
            if self.peek() in ("exists", "forall") or self._looks_like_formula():
                inner = self.formula()
                self.take(")")
                return inner
            self.pos = start
        if tok in ("indep", "ind"):
            self.take()
            self.take("(")
            term = self.set_term()
            self.take(")")
            return F.Indep(term)
        if tok == "is_circuit":
            self.take()
            self.take("(")
            term = self.set_term()
            self.take(")")
            return self._is_circuit(term)
        if tok == "is_base":
            self.take()
            self.take("(")
            term = self.set_term()
            self.take(")")
            return self._is_base(term)
        if tok == "spanning":
            self.take()
            self.take("(")
            term = self.set_term()
            self.take(")")
            return self._spanning(term)
        if tok == "cl":
            left = self.closure_value()
            self.take("=")
            if self.peek() != "cl":
                self.fail("closure can only be compared with another closure")
            right = self.closure_value()
            return F.ClosureEq(left, right)
        return self.comparison()

    def _looks_like_formula(self):
        # inside '(' we may have a parenthesized formula or a set term; a
        # set term uses only names, parens, braces, '\' and '+', so any
        # other token before the matching ')' means formula
        termish = {"(", ")", "{", "}", "\\", "+"}
        depth = 0
        for tok, _ in self.tokens[self.pos :]:
            if tok is None:
                return False
            if tok == "(":
                depth += 1
            elif tok == ")":
                if depth == 0:
                    return False
                depth -= 1
            elif tok not in termish and not _is_name(tok):
                return True
        return False

    def closure_value(self):
        self.take("cl")
        self.take("(")
        term = self.set_term()
        self.take(")")
        return term

    def comparison(self):
        if F.is_set_name(self.peek() or ""):
            left = self.set_term()
            op = self.take()
            if op == "=":
                return F.SetEq(left, self.set_term())
            if op == "!=":
                return F.Not(F.SetEq(left, self.set_term()))
            self.fail(f"expected '=' after a set term, found {op!r}")
        var = self.variable()
        op = self.peek()
        if op == "in":
            self.take()
            if self.peek() == "cl":
                return F.InClosure(var, self.closure_value())
            return F.Member(var, self.set_term())
        if op == "=":
            self.take()
            return F.ElemEq(var, self.variable())
        if op == "!=":
            self.take()
            return F.Not(F.ElemEq(var, self.variable()))
        self.fail(f"expected 'in', '=' or '!=' after {var!r}")

    def set_term(self):
        tok = self.peek()
        if tok == "(":
            self.take("(")
            term = self.set_term()
            self.take(")")
        else:
            name = self.variable()
            if not F.is_set_name(name):
                self.fail(f"{name!r} is not a set variable (capitalize set names)")
            term = F.Var(name)
        while self.peek() in ("\\", "+"):
            op = self.take()
            self.take("{")
            elem = self.variable()
            if F.is_set_name(elem):
                self.fail(f"{elem!r} is not an element variable")
            self.take("}")
            term = F.Remove(term, elem) if op == "\\" else F.Add(term, elem)
        return term

    # -- macros ------------------------------------------------------------

    def _fresh(self, base):
        return f"{base}_{self.pos}"

    def _is_circuit(self, term):
        e = self._fresh("e")
        return F.And(
            F.Not(F.Indep(term)),
            F.Forall(e, F.Implies(F.Member(e, term), F.Indep(F.Remove(term, e)))),
        )

    def _is_base(self, term):
        e = self._fresh("e")
        return F.And(
            F.Indep(term),
            F.Forall(
                e,
                F.Implies(F.Not(F.Member(e, term)), F.Not(F.Indep(F.Add(term, e)))),
            ),
        )

    def _spanning(self, term):
        e = self._fresh("e")
        return F.Forall(e, F.InClosure(e, term))


def parse(text):
    """Parse MSO surface text into a checked formula tree."""
    p = _Parser(text)
    out = p.formula()
    if p.peek() is not None:
        p.fail(f"unexpected trailing input {p.peek()!r}")
    return F.check_kinds(out)
