"""Modal definability toolkit.

Formulas are native objects; frames, models and reports are plain dicts.
"""

import json

from ._modaldef import (
    Error,
    FragmentError,
    Formula,
    InputError,
    ParseError,
    clause_to_idis,
    dep_to_idis,
    emdl_to_mdl,
    fragment_leq,
    generate,
    idis_to_clause,
    negate,
    parse,
    render,
    to_box_form,
    to_closed_clauses,
    to_idis_normal_form,
)
from . import _modaldef as _native

__all__ = [
    "Error", "FragmentError", "Formula", "InputError", "ParseError",
    "audit", "clause_to_idis", "dep_to_idis", "emdl_to_mdl", "equiv", "eval_team", "eval_world",
    "fragment_leq", "frame_class", "frame_valid", "generate", "idis_to_clause", "model_valid",
    "negate", "parse", "render", "replay", "to_box_form", "to_closed_clauses", "to_idis_normal_form",
]


def _formula(f):
    return f if isinstance(f, Formula) else parse(f)


def eval_world(model, world, formula):
    return _native.eval_world(json.dumps(model), str(world), _formula(formula))


def eval_team(model, team, formula):
    return _native.eval_team(json.dumps(model), [str(w) for w in team], _formula(formula))


def model_valid(model, formula):
    return _native.model_valid(json.dumps(model), _formula(formula))


def frame_valid(frame, formula):
    return _native.frame_valid(json.dumps(frame), _formula(formula))


def frame_class(formula, max_points=3):
    return [json.loads(f) for f in _native.frame_class(_formula(formula), max_points)]


def audit(prop, formula, max_points=3, max_seed=0):
    return json.loads(_native.audit(prop, _formula(formula), max_points, max_seed))


def equiv(first, second, mode, max_points=3):
    return json.loads(_native.equiv(_formula(first), _formula(second), mode, max_points))


def replay(report):
    """True iff the report's replay block reproduces its counterexample."""
    return _native.replay(json.dumps(report))
