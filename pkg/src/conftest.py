"""Shared pytest setup: hypothesis profile and symbol registries"""

from hypothesis import HealthCheck, settings

from symreal import Mode, SymbolRegistry

settings.register_profile(
    'archgroups',
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile('archgroups')


def algebraic_registry():
    """t = pi, u = e, w = ln 2 (algebraic); s1 = sqrt 2, s2 = sqrt 3 (linear)"""
    registry = SymbolRegistry()
    registry.declare('t', Mode.ALGEBRAIC, 'const:pi')
    registry.declare('u', Mode.ALGEBRAIC, 'const:e')
    registry.declare('w', Mode.ALGEBRAIC, 'const:ln2')
    registry.declare('s1', Mode.LINEAR, 'const:sqrt2')
    registry.declare('s2', Mode.LINEAR, 'const:sqrt3')
    return registry
