"""Attribute-ad expression language: parsing, three-valued evaluation, matching."""
from .values import (  # noqa: F401
    BOOL,
    ERROR,
    FALSE,
    INT,
    REAL,
    TEXT,
    TRUE,
    UNDEF,
    UNDEFINED,
    Value,
    boolean,
    error,
    integer,
    real,
    text,
)
from .exprs import (  # noqa: F401
    SELF,
    TARGET,
    UNSCOPED,
    AttrRef,
    Binary,
    Call,
    Expr,
    Literal,
    Unary,
    unparse,
)
from .parser import ParseError, parse  # noqa: F401
from .evaluator import DEPTH_LIMIT, evaluate  # noqa: F401
from .ads import (  # noqa: F401
    Ad,
    KINDS,
    ad_to_text,
    ads_from_text,
    ads_to_text,
    rank_order,
    rank_value,
    requirements_match,
    symmetric_match,
)
