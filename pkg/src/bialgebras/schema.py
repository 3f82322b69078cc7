"""JSON schemas for everything the CLI prints with ``--format json``."""

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}

LAMBDA = {
    "type": "object",
    "patternProperties": {r"^[1-9]\d*$": {"type": "integer", "minimum": 1}},
    "additionalProperties": False,
}

PARTITION = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
}

POLY = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["monomial", "coeff"],
        "properties": {"monomial": {"type": "array", "items": LAMBDA}, "coeff": RATIONAL},
        "additionalProperties": False,
    },
}

TENSOR = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["monomial", "coeff"],
        "properties": {
            "monomial": {"type": "array", "items": {"type": "array", "items": LAMBDA}, "minItems": 2},
            "coeff": RATIONAL,
        },
        "additionalProperties": False,
    },
}

TRANSVERSALS = {
    "type": "object",
    "required": ["sigma", "labeled_count", "iso_class_count", "labeled", "iso_classes"],
    "properties": {
        "sigma": PARTITION,
        "labeled_count": {"type": "integer"},
        "iso_class_count": {"type": "integer"},
        "labeled": {
            "type": "array",
            "items": {"type": "object", "required": ["pi", "tau"], "properties": {"pi": PARTITION, "tau": PARTITION}},
        },
        "iso_classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pi", "tau", "orbit_size"],
                "properties": {"pi": PARTITION, "tau": PARTITION, "orbit_size": {"type": "integer", "minimum": 1}},
            },
        },
    },
}

SEGAL = {
    "type": "object",
    "patternProperties": {
        "^(NS|TS)$": {
            "type": "object",
            "required": ["bound", "passed", "counts"],
            "properties": {
                "bound": {"type": "integer"},
                "passed": {"type": "boolean"},
                "counts": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "object",
                        "required": ["two_simplices", "glued_pairs"],
                        "properties": {"two_simplices": RATIONAL, "glued_pairs": RATIONAL},
                    },
                },
            },
        }
    },
    "additionalProperties": False,
}

DUALITY = {
    "type": "object",
    "required": ["passed", "results"],
    "properties": {
        "passed": {"type": "boolean"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "generator", "seed", "passed", "trials"],
                "properties": {
                    "kind": {"enum": ["fdb", "pleth"]},
                    "generator": {"type": "string"},
                    "seed": {"type": "integer"},
                    "passed": {"type": "integer"},
                    "trials": {"type": "integer"},
                },
            },
        },
    },
}

_TERM = {
    "type": "object",
    "required": ["monomial", "coeff"],
    "properties": {"monomial": LAMBDA, "coeff": RATIONAL},
}

CYCLE_INDEX = {
    "type": "object",
    "required": ["species", "n", "fixed_point_sum", "series_coefficients"],
    "properties": {
        "species": {"type": "string"},
        "n": {"type": "integer"},
        "fixed_point_sum": {"type": "array", "items": _TERM},
        "series_coefficients": {"type": "array", "items": _TERM},
    },
}

REPORT = {
    "type": "object",
    "required": ["passed", "checks"],
    "properties": {
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "detail", "seconds", "limit_seconds", "failures"],
            },
        },
    },
}

ERROR = {
    "type": "object",
    "required": ["error", "message"],
    "properties": {
        "error": {"enum": ["bound-exceeded", "parse-error", "invalid-argument"]},
        "message": {"type": "string"},
        "limit": {"type": "integer"},
        "position": {"type": "integer"},
    },
}

BY_VERB = {
    "fdb-coproduct": TENSOR,
    "pleth-coproduct": TENSOR,
    "bell": POLY,
    "transversals": TRANSVERSALS,
    "segal-check": SEGAL,
    "duality-check": DUALITY,
    "cycle-index": CYCLE_INDEX,
    "report": REPORT,
}
