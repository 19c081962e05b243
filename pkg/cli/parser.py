"""
The .fdh input language.

A document is a sequence of blocks:

    field F101
    algebra Λ { vertices 1 2; arrows alpha:1->1 beta:1->2; relations alpha*alpha, beta*alpha; }
    module M over Λ⊗Σop { dims 2 2; map alpha×3 = [[0,0],[1,0]]; }
    module S over Σ { simple 3; }
    task semtl-check { lambda Λ; sigma Σ; m M; n N; level 1; }

Paths are written as compositions, so b*a traverses a first. A relation is
a sum of paths with optional rational coefficients (2 b*a - c*d). Algebra
expressions join factors with ⊗; a factor is a declared algebra name,
optionally followed by 'op' or '^op'. '#' starts a comment.

parse() checks every name against the declarations and raises
ResolutionError for a dangling one, so a parsed document only fails later
on mathematical grounds.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from common.errors import ParseError, ResolutionError
from linalg.field import Field

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"""
    (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<word>[\w×^′']+)
  | (?P<symbol>[{}\[\];,=:*+\-⊗/])
""", re.VERBOSE)

CONSTRUCTORS = {'simple': 1, 'projective': 1, 'regular': 0, 'bimodule': 1, 'top': 0}

ALGEBRA_KEYS = {'algebra', 'lambda', 'sigma'}
MODULE_KEYS = {'module', 'm', 'n', 'x', 'y', 'source', 'target'}
INT_KEYS = {'level', 'upto', 'bound', 'seed', 'steps', 'samples', 'cap', 'bump'}
DATA_KEYS = {'lambda', 'sigma', 'm', 'n'}
COMMON_KEYS = {'seed', 'expect'}

# task kind -> (required keys, optional keys)
TASKS: Dict[str, Tuple[set, set]] = {
    'dim': (set(), {'algebra', 'module'}),
    'basis': ({'algebra'}, set()),
    'resolve': ({'module'}, {'upto', 'bound'}),
    'ext': ({'source', 'target'}, {'upto', 'window'}),
    'hh': ({'algebra'}, {'upto', 'window', 'oracle'}),
    'gorenstein': ({'algebra'}, {'bound'}),
    'mcm': ({'module'}, {'bound'}),
    'stablehom': ({'source', 'target'}, {'upto'}),
    'rotate': ({'source'}, {'target', 'upto'}),
    'semt-check': (DATA_KEYS, {'x', 'y', 'bound'}),
    'semtl-check': (DATA_KEYS | {'level'}, {'bump'}),
    'lift': (DATA_KEYS, {'x', 'y', 'bound'}),
    'bump-level': (DATA_KEYS | {'level'}, {'steps'}),
    'ext-iso': (DATA_KEYS | {'level', 'source', 'target'}, {'upto', 'direction', 'bound', 'bump'}),
    'hh-transfer': (DATA_KEYS | {'level'}, {'upto', 'samples', 'bound', 'bump'}),
    'fg': ({'algebra'}, {'upto', 'bound'}),
    'fg-diagram': (DATA_KEYS | {'level'}, {'upto', 'cap', 'bound', 'bump'}),
}


# =============================================================================
# Document
# =============================================================================

@dataclass
class AlgebraDecl:
    name: str
    vertices: List[str]
    arrows: List[Tuple[str, str, str]]
    # each relation: (coefficient, path as written) terms
    relations: List[List[Tuple[str, List[str]]]]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass
class ModuleDecl:
    name: str
    over: str
    dims: List[int] = field(default_factory=list)
    maps: Dict[str, List[List[str]]] = field(default_factory=dict)
    constructor: Optional[Tuple[str, List[str]]] = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass
class TaskDecl:
    kind: str
    params: Dict[str, List[str]]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def has(self, key: str) -> bool:
        return key in self.params

    def word(self, key: str, default: Optional[str] = None) -> Optional[str]:
        values = self.params.get(key)
        return values[0] if values else default

    def integer(self, key: str, default: Optional[int] = None) -> Optional[int]:
        values = self.params.get(key)
        return int(values[0]) if values else default

    def window(self) -> Optional[Tuple[int, int]]:
        values = self.params.get('window')
        return (int(values[0]), int(values[1])) if values else None

    @property
    def label(self) -> str:
        return f"{self.kind}@{self.line}"


@dataclass
class InputDocument:
    field_name: Optional[str] = None
    algebras: Dict[str, AlgebraDecl] = field(default_factory=dict)
    modules: Dict[str, ModuleDecl] = field(default_factory=dict)
    tasks: List[TaskDecl] = field(default_factory=list)


def split_factors(expression: str) -> List[str]:
    return expression.split('⊗')


def factor_base(factor: str, algebras: Dict[str, AlgebraDecl]) -> Tuple[str, bool]:
    """(declared name, opposite?) of one factor of an algebra expression."""
    if factor in algebras:
        return factor, False
    for suffix in ('^op', 'op'):
        if factor.endswith(suffix) and factor[:-len(suffix)] in algebras:
            return factor[:-len(suffix)], True
    return factor, False


# =============================================================================
# Tokens
# =============================================================================

class Token:
    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def touches(self, other: 'Token') -> bool:
        return self.line == other.line and self.column + len(self.text) == other.column

    def __repr__(self):
        return f"<Token {self.kind} {self.text!r} {self.line}:{self.column}>"


def tokenize(text: str) -> List[Token]:
    """
    Raises:
        ParseError: On a character that starts no token
    """
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"Unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind == 'newline':
            line, line_start = line + 1, match.end()
        elif kind not in ('space', 'comment'):
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token('end', '', line, pos - line_start + 1))
    return tokens


# =============================================================================
# Parser
# =============================================================================

class Parser:
    """Recursive descent over the token list."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.document = InputDocument()

    # helpers

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        self.pos += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.peek()
        return ParseError(message, token.line, token.column)

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind in ('symbol', 'arrow') and token.text == text

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token.kind not in ('symbol', 'arrow') or token.text != text:
            found = token.text or 'end of input'
            raise self.error(f"Expected '{text}', found '{found}'")
        return self.advance()

    def word(self, what: str = 'a name') -> Token:
        token = self.peek()
        if token.kind != 'word':
            found = token.text or 'end of input'
            raise self.error(f"Expected {what}, found '{found}'")
        return self.advance()

    def integer(self, what: str = 'an integer') -> int:
        token = self.word(what)
        if not token.text.isdigit():
            raise self.error(f"Expected {what}, found '{token.text}'", token)
        return int(token.text)

    def number(self) -> str:
        """An optionally signed integer or fraction, normalized."""
        negative = False
        if self.at('-'):
            self.advance()
            negative = True
        numerator = self.integer('a number')
        value = Fraction(numerator)
        if self.at('/'):
            self.advance()
            denominator_token = self.peek()
            denominator = self.integer('a denominator')
            if not denominator:
                raise self.error("Zero denominator", denominator_token)
            value = Fraction(numerator, denominator)
        return str(-value if negative else value)

    def algebra_expression(self) -> str:
        """Factors joined by ⊗, kept as written."""
        parts = [self.word('an algebra').text]
        while self.at('⊗'):
            self.advance()
            parts.append(self.word('an algebra').text)
        return '⊗'.join(parts)

    # blocks

    def parse(self) -> InputDocument:
        while self.peek().kind != 'end':
            token = self.word('a block keyword')
            if token.text == 'field':
                self.field_line(token)
            elif token.text == 'algebra':
                self.algebra_block(token)
            elif token.text == 'module':
                self.module_block(token)
            elif token.text == 'task':
                self.task_block(token)
            else:
                raise self.error(f"Unknown block '{token.text}'", token)
        return self.document

    def field_line(self, keyword: Token):
        if self.document.field_name is not None:
            raise self.error("Field declared twice", keyword)
        token = self.word("a field name")
        try:
            Field.parse(token.text)
        except ValueError as exc:
            raise self.error(str(exc), token)
        self.document.field_name = token.text
        if self.at(';'):
            self.advance()

    def algebra_block(self, keyword: Token):
        name_token = self.word('an algebra name')
        name = name_token.text
        if name in self.document.algebras:
            raise self.error(f"Algebra '{name}' declared twice", name_token)
        decl = AlgebraDecl(name, [], [], [], keyword.line, keyword.column)
        self.expect('{')
        while not self.at('}'):
            item = self.word("'vertices', 'arrows' or 'relations'")
            if item.text == 'vertices':
                while not self.at(';'):
                    decl.vertices.append(self.word('a vertex').text)
            elif item.text == 'arrows':
                while not self.at(';'):
                    decl.arrows.append(self.arrow_spec(decl))
            elif item.text == 'relations':
                if not self.at(';'):
                    decl.relations.append(self.relation(decl))
                    while self.at(','):
                        self.advance()
                        decl.relations.append(self.relation(decl))
            else:
                raise self.error(f"Unknown algebra item '{item.text}'", item)
            self.expect(';')
        self.expect('}')
        self.document.algebras[name] = decl

    def arrow_spec(self, decl: AlgebraDecl) -> Tuple[str, str, str]:
        name = self.word('an arrow name').text
        self.expect(':')
        ends = []
        for position in range(2):
            if position:
                self.expect('->')
            token = self.word('a vertex')
            if token.text not in decl.vertices:
                raise ResolutionError(token.text, 'vertex', token.line, token.column)
            ends.append(token.text)
        return name, ends[0], ends[1]

    def relation(self, decl: AlgebraDecl) -> List[Tuple[str, List[str]]]:
        terms = [self.term(decl, first=True)]
        while self.at('+') or self.at('-'):
            terms.append(self.term(decl, first=False))
        return terms

    def term(self, decl: AlgebraDecl, first: bool) -> Tuple[str, List[str]]:
        negative = False
        if self.at('+') or self.at('-'):
            negative = self.advance().text == '-'
        elif not first:
            raise self.error("Expected '+' or '-'")
        coeff = Fraction(1)
        token = self.peek()
        follower = self.peek(1)
        if token.kind == 'word' and token.text.isdigit() and (follower.kind == 'word' or follower.text == '/'):
            coeff = Fraction(self.number())
        arrow_names = {a[0] for a in decl.arrows}
        path = []
        while True:
            token = self.word('an arrow')
            if token.text not in arrow_names:
                raise ResolutionError(token.text, 'arrow', token.line, token.column)
            path.append(token.text)
            if not self.at('*'):
                break
            self.advance()
        return str(-coeff if negative else coeff), path

    def module_block(self, keyword: Token):
        name_token = self.word('a module name')
        name = name_token.text
        if name in self.document.modules:
            raise self.error(f"Module '{name}' declared twice", name_token)
        over_token = self.word("'over'")
        if over_token.text != 'over':
            raise self.error(f"Expected 'over', found '{over_token.text}'", over_token)
        expression_token = self.peek()
        over = self.algebra_expression()
        self.check_algebra(over, expression_token)
        decl = ModuleDecl(name, over, line=keyword.line, column=keyword.column)
        self.expect('{')
        while not self.at('}'):
            item = self.word('a module item')
            if item.text == 'dims':
                while not self.at(';'):
                    decl.dims.append(self.integer('a dimension'))
            elif item.text == 'map':
                arrow = self.word('an arrow').text
                self.expect('=')
                decl.maps[arrow] = self.matrix()
            elif item.text in CONSTRUCTORS:
                if decl.constructor is not None:
                    raise self.error("A module has at most one constructor", item)
                args = []
                for _ in range(CONSTRUCTORS[item.text]):
                    args.append(self.algebra_expression() if item.text == 'bimodule' else self.word().text)
                decl.constructor = (item.text, args)
            else:
                raise self.error(f"Unknown module item '{item.text}'", item)
            self.expect(';')
        closing = self.expect('}')
        if decl.constructor is not None and (decl.dims or decl.maps):
            raise self.error(f"Module '{name}' mixes a constructor with dims or maps", closing)
        if decl.constructor is None and not decl.dims:
            raise self.error(f"Module '{name}' needs dims or a constructor", closing)
        if decl.constructor is not None and decl.constructor[0] == 'bimodule':
            self.check_algebra(decl.constructor[1][0], closing)
        self.document.modules[name] = decl

    def matrix(self) -> List[List[str]]:
        rows = []
        self.expect('[')
        while not self.at(']'):
            row = []
            self.expect('[')
            while not self.at(']'):
                row.append(self.number())
                if not self.at(']'):
                    self.expect(',')
            self.expect(']')
            rows.append(row)
            if not self.at(']'):
                self.expect(',')
        self.expect(']')
        if len({len(row) for row in rows}) > 1:
            raise self.error("Matrix rows have different lengths")
        return rows

    def task_kind(self) -> Token:
        first = self.word('a task kind')
        text, last = first.text, first
        while self.at('-') and last.touches(self.peek()) and self.peek().touches(self.peek(1)):
            self.advance()
            last = self.word()
            text += '-' + last.text
        return Token('word', text, first.line, first.column)

    def task_block(self, keyword: Token):
        kind = self.task_kind()
        if kind.text not in TASKS:
            raise self.error(f"Unknown task '{kind.text}'", kind)
        required, optional = TASKS[kind.text]
        allowed = required | optional | COMMON_KEYS
        params: Dict[str, List[str]] = {}
        self.expect('{')
        while not self.at('}'):
            key = self.word('a parameter')
            if key.text not in allowed:
                raise self.error(f"Task '{kind.text}' takes no parameter '{key.text}'", key)
            if key.text in params:
                raise self.error(f"Parameter '{key.text}' given twice", key)
            params[key.text] = self.parameter(key)
            self.expect(';')
        closing = self.expect('}')
        missing = sorted(required - set(params))
        if missing:
            raise self.error(f"Task '{kind.text}' is missing {', '.join(missing)}", kind)
        if kind.text == 'dim' and len({'algebra', 'module'} & set(params)) != 1:
            raise self.error("Task 'dim' takes exactly one of algebra, module", closing)
        self.document.tasks.append(TaskDecl(kind.text, params, keyword.line, keyword.column))

    def parameter(self, key: Token) -> List[str]:
        if key.text in ALGEBRA_KEYS:
            token = self.peek()
            expression = self.algebra_expression()
            self.check_algebra(expression, token)
            return [expression]
        if key.text in MODULE_KEYS:
            token = self.word('a module')
            if token.text not in self.document.modules:
                raise ResolutionError(token.text, 'module', token.line, token.column)
            return [token.text]
        if key.text in INT_KEYS:
            return [str(self.integer())]
        if key.text == 'window':
            return [str(self.integer()), str(self.integer())]
        if key.text == 'oracle':
            return []
        value = self.word()
        choices = {'direction': ('N', 'M'), 'expect': ('pass', 'fail')}[key.text]
        if value.text not in choices:
            raise self.error(f"{key.text} must be one of {', '.join(choices)}", value)
        return [value.text]

    def check_algebra(self, expression: str, token: Token):
        for factor in split_factors(expression):
            base, _ = factor_base(factor, self.document.algebras)
            if base not in self.document.algebras:
                raise ResolutionError(factor, 'algebra', token.line, token.column)


def parse(text: str) -> InputDocument:
    """
    Parse a document.

    Raises:
        ParseError: With the line and column of the offending token
        ResolutionError: For a name that is not declared before its use
    """
    document = Parser(text).parse()
    logger.debug(f"Parsed {len(document.algebras)} algebras, {len(document.modules)} modules, "
                 f"{len(document.tasks)} tasks")
    return document


# =============================================================================
# Printer
# =============================================================================

def _format_relation(terms: List[Tuple[str, List[str]]]) -> str:
    out = []
    for i, (coeff, path) in enumerate(terms):
        value = Fraction(coeff)
        magnitude = abs(value)
        body = '*'.join(path) if magnitude == 1 else f"{magnitude} {'*'.join(path)}"
        if i == 0:
            out.append(f"-{body}" if value < 0 else body)
        else:
            out.append(f"{'-' if value < 0 else '+'} {body}")
    return ' '.join(out)


def _format_matrix(rows: List[List[str]]) -> str:
    return '[' + ', '.join('[' + ', '.join(row) + ']' for row in rows) + ']'


def format_document(document: InputDocument) -> str:
    """Canonical text of a document; parsing it gives an equal document."""
    lines = []
    if document.field_name is not None:
        lines.append(f"field {document.field_name}")
    for decl in document.algebras.values():
        lines.append(f"algebra {decl.name} {{")
        lines.append(f"    vertices {' '.join(decl.vertices)};")
        if decl.arrows:
            lines.append(f"    arrows {' '.join(f'{n}:{s}->{t}' for n, s, t in decl.arrows)};")
        if decl.relations:
            lines.append(f"    relations {', '.join(_format_relation(r) for r in decl.relations)};")
        lines.append("}")
    for decl in document.modules.values():
        lines.append(f"module {decl.name} over {decl.over} {{")
        if decl.constructor is not None:
            kind, args = decl.constructor
            lines.append(f"    {' '.join([kind] + args)};")
        else:
            lines.append(f"    dims {' '.join(str(d) for d in decl.dims)};")
            for arrow, rows in decl.maps.items():
                lines.append(f"    map {arrow} = {_format_matrix(rows)};")
        lines.append("}")
    for task in document.tasks:
        lines.append(f"task {task.kind} {{")
        for key, values in task.params.items():
            lines.append(f"    {' '.join([key] + values)};")
        lines.append("}")
    return '\n'.join(lines) + '\n'
