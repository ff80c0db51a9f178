"""Published JSON schemas for the machine-readable CLI outputs."""

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label", "self_int", "role"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "label": {"type": "string"},
                    "self_int": {"type": "integer"},
                    "role": {"enum": ["boundary", "fiber-component", "section",
                                      "exceptional", "other"]},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "string"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

RESOLVE_SCHEMA = {
    "type": "object",
    "required": ["scenario", "parameters", "graph", "multiplicities",
                 "fiber_self_intersection"],
    "additionalProperties": False,
    "properties": {
        "scenario": {"enum": ["conic", "reduced", "mult2", "complete", "sls"]},
        "parameters": {"type": "object"},
        "graph": GRAPH_SCHEMA,
        "multiplicities": {
            "type": "object",
            "additionalProperties": {"type": "integer", "minimum": 1},
        },
        "fiber_self_intersection": {"type": "integer"},
    },
}

CENSUS_SCHEMA = {
    "type": "object",
    "required": ["rows"],
    "additionalProperties": False,
    "properties": {
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "entries", "total"],
                "additionalProperties": False,
                "properties": {
                    "d": {"type": "integer", "minimum": 2},
                    "entries": {
                        "type": "object",
                        "additionalProperties": {
                            "oneOf": [
                                {
                                    "type": "object",
                                    "required": ["kind", "count", "provenance"],
                                    "additionalProperties": False,
                                    "properties": {
                                        "kind": {"const": "finite"},
                                        "count": {"type": "integer", "minimum": 0},
                                        "provenance": {"enum": ["computed", "recorded"]},
                                    },
                                },
                                {
                                    "type": "object",
                                    "required": ["kind", "moduli_dim"],
                                    "additionalProperties": False,
                                    "properties": {
                                        "kind": {"const": "infinite"},
                                        "moduli_dim": {"type": "integer", "minimum": 0},
                                    },
                                },
                            ],
                        },
                    },
                    "total": {
                        "oneOf": [{"type": "integer", "minimum": 0},
                                  {"const": "infinite"}],
                    },
                },
            },
        },
    },
}
