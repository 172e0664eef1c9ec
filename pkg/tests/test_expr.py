"""Expression language: grammar, round-trip, log-space evaluation."""

import math

import numpy as np
import pytest

from mdet.densities import SupportKind
from mdet.errors import EvalDomainError, NonFiniteError, ParseError
from mdet.expr import (Bin, Call, Neg, Num, Var, eval_log, eval_plain,
                       expr_density, parse_density_expr, to_source)

# fifty expressions for the round-trip corpus: density kernels, plain
# arithmetic, and deliberately awkward operator placements
CORPUS = [
    "exp(-x^2/2)",
    "exp(-x^2/2)/x",
    "exp(-(log(x))^2/2)/x",
    "1/x*exp(-(log(x))^2/2)",
    "exp(-x)",
    "exp(-x/2)/x^0.5",
    "exp(-abs(x))",
    "exp(-x^0.5)",
    "exp(-x^1.5+x)",
    "x^2*exp(-x)",
    "x^-2",
    "2+3*4^2",
    "2^3^2",
    "-x^2/2",
    "-x*2",
    "2*-3",
    "2--3",
    "-(x+1)",
    "x/2/3",
    "x-2-3",
    "x^(-2)",
    "(x+1)*(x-1)",
    "abs(x-3)+1",
    "log(x)",
    "log(x+1)/x",
    "log(log(x))",
    "exp(log(x))",
    "exp(x)/exp(x+1)",
    "1.5e3*x",
    "0.5*x^2",
    ".5*x",
    "x*x*x",
    "x^2^3",
    "exp(-x^2/2)*x^4",
    "exp(-(x-1)^2)",
    "exp(-(x/3)^2)",
    "1/(1+x^2)^3",
    "(1+x^2)^-3",
    "exp(-x)*(1+1/x)",
    "exp(-x)+exp(-2*x)",
    "exp(-x^2/2-x)",
    "x^0",
    "3",
    "-4.25",
    "x",
    "-x",
    "exp(-abs(x)^3)",
    "x^3*exp(-x^2)",
    "log(1+exp(-x))",
    "exp(-x^4/24)",
]


def test_gaussian_kernel_ast_shape():
    ast = parse_density_expr("exp(-x^2/2)")
    assert ast == Call("exp", Neg(Bin("/", Bin("^", Var(), Num(2.0)),
                                      Num(2.0))))


def test_lognormal_kernel_parses():
    ast = parse_density_expr("exp(-(log(x))^2/2)/x")
    assert isinstance(ast, Bin) and ast.op == "/"
    assert isinstance(ast.left, Call) and ast.left.fn == "exp"


def test_unbalanced_parenthesis_reports_position():
    with pytest.raises(ParseError) as err:
        parse_density_expr("exp(-x")
    assert "parenthesis" in str(err.value)
    assert err.value.position == 7


def test_lexing_error_position():
    with pytest.raises(ParseError) as err:
        parse_density_expr("x + $")
    assert err.value.position == 5


def test_empty_and_trailing():
    with pytest.raises(ParseError):
        parse_density_expr("   ")
    with pytest.raises(ParseError):
        parse_density_expr("x 2")
    with pytest.raises(ParseError):
        parse_density_expr("exp()")
    with pytest.raises(ParseError):
        parse_density_expr("foo(x)")


def test_precedence():
    assert eval_plain(parse_density_expr("2+3*4^2"), 0.0) == 50.0
    # ^ is left-associative
    assert eval_plain(parse_density_expr("2^3^2"), 0.0) == 64.0
    # prefix minus binds looser than * and /
    assert eval_plain(parse_density_expr("-2^2"), 0.0) == -4.0
    assert eval_plain(parse_density_expr("-6/2"), 0.0) == -3.0
    assert eval_plain(parse_density_expr("2*-3"), 0.0) == -6.0


@pytest.mark.parametrize("src", CORPUS)
def test_roundtrip(src):
    ast = parse_density_expr(src)
    printed = to_source(ast)
    assert parse_density_expr(printed) == ast


def test_corpus_size():
    assert len(CORPUS) == 50


def test_eval_log_exact_gaussian():
    ast = parse_density_expr("exp(-x^2/2)")
    assert eval_log(ast, 40.0) == -800.0  # exact, not log(underflow)
    assert eval_log(parse_density_expr("exp(-x)"), 3.0) == -3.0


def test_eval_log_lognormal_kernel_at_e():
    ast = parse_density_expr("1/x*exp(-(log(x))^2/2)")
    assert eval_log(ast, math.e) == pytest.approx(-1.5, abs=1e-14)


def test_eval_log_survives_plain_underflow():
    ast = parse_density_expr("exp(-x^2/2)")
    for x in (40.0, 100.0, 500.0, 700.0):
        got = eval_log(ast, x)
        assert math.isfinite(got)
        assert got == pytest.approx(-x * x / 2.0, rel=1e-15)


def test_log_fidelity_where_plain_is_finite():
    rng = np.random.RandomState(7)
    kernels = ["exp(-x^2/2)", "x^2*exp(-x)", "exp(-x)*(1+1/x)",
               "exp(-x^0.5)", "1/(1+x^2)^3", "exp(-(log(x))^2/2)/x"]
    for src in kernels:
        ast = parse_density_expr(src)
        for x in rng.uniform(1.0, 700.0, 60):
            try:
                plain = eval_plain(ast, float(x))
            except NonFiniteError:
                continue
            if plain <= 1e-300:
                assert math.isfinite(eval_log(ast, float(x)))
                continue
            assert eval_log(ast, float(x)) == pytest.approx(
                math.log(plain), abs=1e-12)


def test_domain_errors():
    with pytest.raises(EvalDomainError):
        eval_log(parse_density_expr("log(-x)"), 2.0)
    with pytest.raises(EvalDomainError):
        eval_plain(parse_density_expr("1/(x-x)"), 2.0)
    with pytest.raises(EvalDomainError):
        eval_log(parse_density_expr("x-5"), 2.0)  # negative value
    with pytest.raises(NonFiniteError):
        eval_log(parse_density_expr("exp(x^2)"), 1e200)


def test_negative_times_negative_falls_back():
    # pushdown would see log of a negative; the product is positive
    ast = parse_density_expr("(x-5)*(x-7)")
    assert eval_log(ast, 2.0) == pytest.approx(math.log(15.0), abs=1e-14)


def test_zero_value_is_log_zero():
    assert eval_log(parse_density_expr("x-2"), 2.0) == -math.inf
    assert eval_log(parse_density_expr("x*0"), 3.0) == -math.inf


def test_pow_of_zero():
    assert eval_log(parse_density_expr("x^0"), 0.0) == 0.0
    with pytest.raises(EvalDomainError):
        eval_log(parse_density_expr("(x-2)^-1"), 2.0)


def test_expr_density_vectorized():
    d = expr_density("exp(-x^2/2)", SupportKind.HAMBURGER, 1.0)
    vals = d.log_f(np.array([1.0, 40.0]))
    assert vals[1] == -800.0
    assert d.support is SupportKind.HAMBURGER
