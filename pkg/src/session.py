#!/usr/bin/env python3
"""
CLI session: symbol registry plus named objects, persisted as a plain-text
script of declaration commands that main.py can replay.
"""

import os
import shlex
import logging

from errors import ContractViolation, ParseError
from symreal import SymbolRegistry
from zmodule import parse_subgroup
from archgroup import OrderedVectorGroup, parse_type_vector
from reductions import clo_to_odag, parse_clo

logger = logging.getLogger('archgroups.session')

KINDS = ('group', 'type', 'clo', 'series')


class Session:
    """
    Named store of Subgroups, TypeVectors, colored orders and series.

    Args:
        path: session script to append declarations to (optional)
        refine_cap: refinement cap for the symbol registry
    """

    def __init__(self, path=None, refine_cap=None):
        self.path = path
        self.registry = SymbolRegistry(refine_cap=refine_cap)
        self.objects = {}
        self.script = []
        self.replaying = False

    # -- persistence ---------------------------------------------------------

    def load(self, execute_line):
        """Replay the session script through execute_line(line)"""
        if not self.path or not os.path.exists(self.path):
            return
        self.replaying = True
        try:
            with open(self.path, "r") as f:
                for number, line in enumerate(f, 1):
                    line = line.strip()
                    if not line or line.startswith('#'):
                        continue
                    try:
                        execute_line(line)
                    except ParseError as e:
                        raise ParseError(f"{self.path}:{number}: {str(e)}")
        finally:
            self.replaying = False
        logger.info(f"Loaded {len(self.script)} declarations from {self.path}")

    def record(self, words):
        """Remember a declaration; appended to the script file unless replaying"""
        line = shlex.join(words)
        self.script.append(line)
        if self.path and not self.replaying:
            with open(self.path, "a") as f:
                f.write(line + "\n")

    # -- objects ---------------------------------------------------------------

    def store(self, name, kind, obj, words):
        if kind not in KINDS:
            raise ContractViolation(f"Unknown object kind {kind!r}")
        if name in self.objects or name in self.registry:
            raise ContractViolation(f"Name {name!r} is already in use")
        self.objects[name] = (kind, obj)
        self.record(words)

    def lookup(self, name, kind):
        entry = self.objects.get(name)
        if entry is None:
            return None
        if entry[0] != kind:
            raise ContractViolation(f"{name!r} is a {entry[0]}, not a {kind}")
        return entry[1]

    def resolve_group(self, token):
        return self.lookup(token, 'group') or parse_subgroup(token, self.registry)

    def resolve_type(self, token):
        return self.lookup(token, 'type') or parse_type_vector(token, self.registry)

    def resolve_clo(self, token):
        """Stored name or `<order>:<colors>` such as `0<1<2:0,1,0`"""
        found = self.lookup(token, 'clo')
        if found is not None:
            return found
        order, sep, colors = token.partition(':')
        if not sep:
            raise ParseError(f"Unknown colored order {token!r}")
        return parse_clo(order, colors)

    def exponent_group(self, token, integral=False):
        """Type vector (name or literal) -> Q^n, colored order name -> ODAG"""
        entry = self.objects.get(token)
        if entry is not None and entry[0] == 'clo':
            return clo_to_odag(entry[1], self.registry)
        if entry is None and ':' in token and '<' in token:
            return clo_to_odag(self.resolve_clo(token), self.registry)
        return OrderedVectorGroup(self.resolve_type(token), integral=integral)

    def declaration_lines(self):
        return list(self.script)
