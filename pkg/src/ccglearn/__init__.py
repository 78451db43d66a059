"""CCG semantic parsing: typed lambda calculus, beam-pruned chart parsing,
lexicon induction (GENLEX and splitting), and perceptron-style learning."""

from .chart import (
    Chart,
    ChartItem,
    Derivation,
    ParseOptions,
    ParseResult,
    complete_parses,
    extract_derivations,
    max_scoring_valid,
    parse_chart,
)
from .grammar import (
    Atomic,
    Category,
    Slash,
    SyntacticCategory,
    backward_application,
    backward_composition,
    forward_application,
    forward_composition,
    parse_category_text,
    parse_syntax,
)
from .induction import (
    GenlexConfig,
    SplitConstraints,
    collect_templates,
    enumerate_splits,
    genlex,
)
from .lambdas import (
    Constant,
    Lambda,
    Literal,
    LogicalExpression,
    Variable,
    alpha_equal,
    apply_exp,
    compose_exp,
    constants_of,
    infer_type,
    parse_expression,
    print_expression,
    simplify,
    subexpressions,
)
from .learning import (
    EvalReport,
    SupervisedExample,
    TrainParams,
    TrainReport,
    TrainingError,
    ValidationExample,
    evaluate,
    train_supervised,
    train_validation_driven,
)
from .lexicon import (
    LexicalEntry,
    LexicalTemplate,
    Lexeme,
    Lexicon,
    factor_entry,
    instantiate,
)
from .model import FeatureVector, Model, dot, lexical_features, rule_features
from .semtypes import (
    FunctionType,
    Ontology,
    PrimitiveType,
    SemanticType,
    parse_type,
)

__version__ = "0.1.0"
