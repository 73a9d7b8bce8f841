//! A small expression language for defining metrics at run time.
//!
//! Grammar (whitespace is free between tokens):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-'? atom ('^' integer)?          // '^' binds tighter than the minus
//! atom   := number | '(' expr ')' | call | identifier
//! call   := name '(' argument (',' argument)* ')'
//! ```
//!
//! Identifiers resolve, in order, to coordinate variables (`z_1`/`z1` …,
//! `v_k` for complex metrics; `x_k`, `u_k` for real ones), the imaginary
//! unit `i`, or a declared parameter name. The function set is `re`, `im`,
//! `conj`, `abs`, `sqrt` (one scalar argument each), `normsq` (one
//! coordinate-group argument: `z`/`v` or `x`/`u`) and `herm` (two
//! coordinate-group arguments, `herm(z, v) = Σ z_k·conj(v_k)`).
//!
//! `-x^2` parses as `-(x^2)`. All error positions are 1-based byte offsets;
//! a source that ends too early reports `len + 1`.
//!
//! Evaluation is generic over the coefficient ring, so the same parsed
//! expression serves plain numeric evaluation and derivative-carrying
//! (hyper-dual) evaluation. `abs(w)` is defined as `√(w·conj(w))`, which is
//! real by construction; `sqrt` is the principal complex square root but
//! refuses arguments that are negative real (a domain error for a metric)
//! or — under derivative-carrying evaluation — within `10⁻³⁰` of zero, where
//! the root is not differentiable.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::complex::{herm, normsq_slice, Cx};
use crate::error::DslError;
use crate::metric::Kind;
use crate::scalar::Coeff;

/// Absolute tolerance on the imaginary part of a metric expression's value.
pub const IM_TOL: f64 = 1e-12;

/// Squared-modulus threshold below which division and the nonsmooth
/// functions refuse to proceed (`10⁻³⁰` on the modulus itself).
const NEAR_ZERO_SQ: f64 = 1e-60;

/// Which coordinate group a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// Base-point coordinates (`z` for complex metrics, `x` for real ones).
    Base,
    /// Tangent coordinates (`v` for complex metrics, `u` for real ones).
    Tangent,
}

/// One node of the abstract syntax tree, tagged with the 1-based byte
/// offset of its principal token.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub node: Node,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Number(f64),
    ImaginaryUnit,
    /// Scalar coordinate, 0-based index.
    Var { group: Group, index: usize },
    /// Declared parameter, 0-based index into the parameter list.
    Param { index: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Re(Box<Expr>),
    Im(Box<Expr>),
    Conj(Box<Expr>),
    Abs(Box<Expr>),
    Sqrt(Box<Expr>),
    NormSq(Group),
    Herm(Group, Group),
}

/// A note attached to a parsed expression (currently: nonsmooth-point
/// warnings for `abs`/`sqrt` nodes).
#[derive(Clone, Debug, PartialEq)]
pub struct Warning {
    pub pos: usize,
    pub message: String,
}

/// A parsed metric expression: the tree plus everything needed to bind it.
#[derive(Clone, Debug)]
pub struct MetricExpr {
    pub source: String,
    pub kind: Kind,
    pub dim: usize,
    pub param_names: Vec<String>,
    pub root: Expr,
    pub warnings: Vec<Warning>,
}

/// Names with fixed meaning; parameters may not shadow them.
pub const FUNCTION_NAMES: [&str; 7] = ["re", "im", "conj", "abs", "sqrt", "normsq", "herm"];

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    /// 1-based byte offset of the first byte of the token.
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i + 1;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push(Token { tok: Tok::Plus, pos });
                i += 1;
            }
            b'-' => {
                out.push(Token { tok: Tok::Minus, pos });
                i += 1;
            }
            b'*' => {
                out.push(Token { tok: Tok::Star, pos });
                i += 1;
            }
            b'/' => {
                out.push(Token { tok: Tok::Slash, pos });
                i += 1;
            }
            b'^' => {
                out.push(Token { tok: Tok::Caret, pos });
                i += 1;
            }
            b'(' => {
                out.push(Token { tok: Tok::LParen, pos });
                i += 1;
            }
            b')' => {
                out.push(Token { tok: Tok::RParen, pos });
                i += 1;
            }
            b',' => {
                out.push(Token { tok: Tok::Comma, pos });
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| DslError::Syntax {
                    pos,
                    message: format!("malformed number literal '{text}'"),
                })?;
                out.push(Token {
                    tok: Tok::Num(value),
                    pos,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[start..i].to_string()),
                    pos,
                });
            }
            _ => {
                return Err(DslError::Syntax {
                    pos,
                    message: format!("unexpected character '{}'", &src[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    kind: Kind,
    dim: usize,
    param_names: &'a [String],
    /// 1-based offset just past the end of the source.
    end_pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn peek_pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end_pos, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, DslError> {
        match self.next() {
            Some(t) if t.tok == want => Ok(t.pos),
            Some(t) => Err(DslError::Syntax {
                pos: t.pos,
                message: format!("expected {what}"),
            }),
            None => Err(DslError::Syntax {
                pos: self.end_pos,
                message: format!("expected {what}"),
            }),
        }
    }

    fn group_letter(&self, which: Group) -> &'static str {
        match (self.kind, which) {
            (Kind::Complex, Group::Base) => "z",
            (Kind::Complex, Group::Tangent) => "v",
            (Kind::Real, Group::Base) => "x",
            (Kind::Real, Group::Tangent) => "u",
        }
    }

    /// Identify `name` as a coordinate group of the current kind.
    fn as_group(&self, name: &str) -> Option<Group> {
        if name == self.group_letter(Group::Base) {
            Some(Group::Base)
        } else if name == self.group_letter(Group::Tangent) {
            Some(Group::Tangent)
        } else {
            None
        }
    }

    /// Identify `name` as a scalar coordinate variable: a group letter of
    /// the current kind followed by an optional underscore and a 1-based
    /// index (`z2` and `z_2` both denote the second base coordinate).
    fn as_variable(&self, name: &str, pos: usize) -> Option<Result<Node, DslError>> {
        let mut chars = name.chars();
        let head = chars.next()?;
        let group = self.as_group(&head.to_string())?;
        let rest = chars.as_str();
        let digits = rest.strip_prefix('_').unwrap_or(rest);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let index: usize = match digits.parse() {
            Ok(i) => i,
            Err(_) => return None,
        };
        if index == 0 || index > self.dim {
            return Some(Err(DslError::IndexOutOfRange {
                pos,
                name: name.to_string(),
                index,
                dim: self.dim,
            }));
        }
        Some(Ok(Node::Var {
            group,
            index: index - 1,
        }))
    }

    fn parse_expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    let pos = self.next().unwrap().pos;
                    let rhs = self.parse_term()?;
                    lhs = Expr {
                        node: Node::Add(Box::new(lhs), Box::new(rhs)),
                        pos,
                    };
                }
                Some(Tok::Minus) => {
                    let pos = self.next().unwrap().pos;
                    let rhs = self.parse_term()?;
                    lhs = Expr {
                        node: Node::Sub(Box::new(lhs), Box::new(rhs)),
                        pos,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let pos = self.next().unwrap().pos;
                    let rhs = self.parse_factor()?;
                    lhs = Expr {
                        node: Node::Mul(Box::new(lhs), Box::new(rhs)),
                        pos,
                    };
                }
                Some(Tok::Slash) => {
                    let pos = self.next().unwrap().pos;
                    let rhs = self.parse_factor()?;
                    lhs = Expr {
                        node: Node::Div(Box::new(lhs), Box::new(rhs)),
                        pos,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// `'-'? atom ('^' integer)?`, built so the power applies before the
    /// minus: `-x^2` is `-(x^2)`.
    fn parse_factor(&mut self) -> Result<Expr, DslError> {
        let neg_pos = if matches!(self.peek(), Some(Tok::Minus)) {
            Some(self.next().unwrap().pos)
        } else {
            None
        };
        let mut e = self.parse_atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            let caret_pos = self.next().unwrap().pos;
            let exponent = self.parse_exponent()?;
            e = Expr {
                node: Node::Pow(Box::new(e), exponent),
                pos: caret_pos,
            };
        }
        if let Some(pos) = neg_pos {
            e = Expr {
                node: Node::Neg(Box::new(e)),
                pos,
            };
        }
        Ok(e)
    }

    fn parse_exponent(&mut self) -> Result<i32, DslError> {
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            true
        } else {
            false
        };
        let pos = self.peek_pos();
        match self.next() {
            Some(Token {
                tok: Tok::Num(v), ..
            }) => {
                if v.fract() != 0.0 || v < 0.0 || v > 64.0 {
                    return Err(DslError::Syntax {
                        pos,
                        message: "exponent must be an integer with magnitude at most 64"
                            .to_string(),
                    });
                }
                let n = v as i32;
                Ok(if negative { -n } else { n })
            }
            Some(t) => Err(DslError::Syntax {
                pos: t.pos,
                message: "expected an integer exponent after '^'".to_string(),
            }),
            None => Err(DslError::Syntax {
                pos: self.end_pos,
                message: "expected an integer exponent after '^'".to_string(),
            }),
        }
    }

    /// Parse one coordinate-group argument (`z`, `v`, `x`, `u` as fits the
    /// kind) for `normsq`/`herm`.
    fn parse_group_arg(&mut self, function: &str) -> Result<Group, DslError> {
        let pos = self.peek_pos();
        match self.next() {
            Some(Token {
                tok: Tok::Ident(name),
                pos,
            }) => self.as_group(&name).ok_or_else(|| DslError::Syntax {
                pos,
                message: format!(
                    "{function} expects a coordinate group ('{}' or '{}'), found '{name}'",
                    self.group_letter(Group::Base),
                    self.group_letter(Group::Tangent),
                ),
            }),
            Some(t) => Err(DslError::Syntax {
                pos: t.pos,
                message: format!("{function} expects a coordinate-group identifier"),
            }),
            None => Err(DslError::Syntax {
                pos,
                message: format!("{function} expects a coordinate-group identifier"),
            }),
        }
    }

    fn parse_call(&mut self, name: String, name_pos: usize) -> Result<Expr, DslError> {
        self.expect(Tok::LParen, "'('")?;
        let node = match name.as_str() {
            "normsq" => {
                let g = self.parse_group_arg("normsq")?;
                if matches!(self.peek(), Some(Tok::Comma)) {
                    return Err(DslError::Arity {
                        pos: name_pos,
                        function: name,
                        expected: 1,
                        found: 2,
                    });
                }
                Node::NormSq(g)
            }
            "herm" => {
                let a = self.parse_group_arg("herm")?;
                self.expect(Tok::Comma, "','")?;
                let b = self.parse_group_arg("herm")?;
                Node::Herm(a, b)
            }
            "re" | "im" | "conj" | "abs" | "sqrt" => {
                let arg = Box::new(self.parse_expr()?);
                if matches!(self.peek(), Some(Tok::Comma)) {
                    return Err(DslError::Arity {
                        pos: name_pos,
                        function: name,
                        expected: 1,
                        found: 2,
                    });
                }
                match name.as_str() {
                    "re" => Node::Re(arg),
                    "im" => Node::Im(arg),
                    "conj" => Node::Conj(arg),
                    "abs" => Node::Abs(arg),
                    _ => Node::Sqrt(arg),
                }
            }
            _ => unreachable!("parse_call invoked only for known functions"),
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr {
            node,
            pos: name_pos,
        })
    }

    fn parse_atom(&mut self) -> Result<Expr, DslError> {
        let pos = self.peek_pos();
        match self.next() {
            Some(Token {
                tok: Tok::Num(v),
                pos,
            }) => Ok(Expr {
                node: Node::Number(v),
                pos,
            }),
            Some(Token {
                tok: Tok::LParen, ..
            }) => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Token {
                tok: Tok::Ident(name),
                pos,
            }) => {
                if FUNCTION_NAMES.contains(&name.as_str()) {
                    if matches!(self.peek(), Some(Tok::LParen)) {
                        return self.parse_call(name, pos);
                    }
                    return Err(DslError::Syntax {
                        pos,
                        message: format!("function '{name}' must be called with '(...)'"),
                    });
                }
                if let Some(var) = self.as_variable(&name, pos) {
                    return Ok(Expr { node: var?, pos });
                }
                if name == "i" {
                    return Ok(Expr {
                        node: Node::ImaginaryUnit,
                        pos,
                    });
                }
                if let Some(index) = self.param_names.iter().position(|p| p == &name) {
                    return Ok(Expr {
                        node: Node::Param { index },
                        pos,
                    });
                }
                if self.as_group(&name).is_some() {
                    return Err(DslError::Syntax {
                        pos,
                        message: format!(
                            "coordinate group '{name}' may only appear inside normsq(...) or herm(...)"
                        ),
                    });
                }
                Err(DslError::UnknownIdentifier { pos, name })
            }
            Some(t) => Err(DslError::Syntax {
                pos: t.pos,
                message: "expected a number, identifier, or '('".to_string(),
            }),
            None => Err(DslError::Syntax {
                pos,
                message: "expected a number, identifier, or '('".to_string(),
            }),
        }
    }
}

fn collect_warnings(e: &Expr, out: &mut Vec<Warning>) {
    match &e.node {
        Node::Abs(a) => {
            out.push(Warning {
                pos: e.pos,
                message: "abs is not differentiable at zero; derivative evaluations refuse \
                          arguments within 1e-30 of it"
                    .to_string(),
            });
            collect_warnings(a, out);
        }
        Node::Sqrt(a) => {
            out.push(Warning {
                pos: e.pos,
                message: "sqrt is not differentiable at zero; derivative evaluations refuse \
                          arguments within 1e-30 of it"
                    .to_string(),
            });
            collect_warnings(a, out);
        }
        Node::Neg(a) | Node::Re(a) | Node::Im(a) | Node::Conj(a) => collect_warnings(a, out),
        Node::Pow(a, _) => collect_warnings(a, out),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
            collect_warnings(a, out);
            collect_warnings(b, out);
        }
        Node::Number(_)
        | Node::ImaginaryUnit
        | Node::Var { .. }
        | Node::Param { .. }
        | Node::NormSq(_)
        | Node::Herm(_, _) => {}
    }
}

/// Parse `source` as a metric expression of the given kind and dimension.
/// `param_names` declares the identifiers that resolve to parameters, in
/// the order their values will later be supplied.
pub fn parse(
    source: &str,
    kind: Kind,
    dim: usize,
    param_names: &[String],
) -> Result<MetricExpr, DslError> {
    let tokens = lex(source)?;
    let end_pos = source.len() + 1;
    let mut parser = Parser {
        tokens,
        at: 0,
        kind,
        dim,
        param_names,
        end_pos,
    };
    let root = parser.parse_expr()?;
    if let Some(t) = parser.tokens.get(parser.at) {
        return Err(DslError::Syntax {
            pos: t.pos,
            message: "unexpected trailing input".to_string(),
        });
    }
    let mut warnings = Vec::new();
    collect_warnings(&root, &mut warnings);
    Ok(MetricExpr {
        source: source.to_string(),
        kind,
        dim,
        param_names: param_names.to_vec(),
        root,
        warnings,
    })
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Values an expression is evaluated against. For real-kind expressions the
/// coordinates are bound with zero imaginary parts.
pub struct Bindings<'a, R: Coeff> {
    pub base: &'a [Cx<R>],
    pub tangent: &'a [Cx<R>],
    pub params: &'a [R::Base],
}

fn group_slice<'b, R: Coeff>(b: &'b Bindings<'_, R>, g: Group) -> &'b [Cx<R>] {
    match g {
        Group::Base => b.base,
        Group::Tangent => b.tangent,
    }
}

fn eval_node<R: Coeff>(e: &Expr, b: &Bindings<'_, R>) -> Result<Cx<R>, DslError> {
    match &e.node {
        Node::Number(v) => Ok(Cx::from_f64(*v, 0.0)),
        Node::ImaginaryUnit => Ok(Cx::i()),
        Node::Var { group, index } => Ok(group_slice(b, *group)[*index]),
        Node::Param { index } => Ok(Cx::from_real(R::from_base(b.params[*index]))),
        Node::Neg(a) => Ok(-eval_node(a, b)?),
        Node::Add(x, y) => Ok(eval_node(x, b)? + eval_node(y, b)?),
        Node::Sub(x, y) => Ok(eval_node(x, b)? - eval_node(y, b)?),
        Node::Mul(x, y) => Ok(eval_node(x, b)? * eval_node(y, b)?),
        Node::Div(x, y) => {
            let num = eval_node(x, b)?;
            let den = eval_node(y, b)?;
            if den.normsq().value().to_f64().unwrap_or(0.0) < NEAR_ZERO_SQ {
                return Err(DslError::DivisionNearZero { pos: e.pos });
            }
            Ok(num / den)
        }
        Node::Pow(base, n) => {
            let w = eval_node(base, b)?;
            if *n < 0 && w.normsq().value().to_f64().unwrap_or(0.0) < NEAR_ZERO_SQ {
                return Err(DslError::DivisionNearZero { pos: e.pos });
            }
            Ok(w.powi(*n))
        }
        Node::Re(a) => Ok(Cx::from_real(eval_node(a, b)?.re)),
        Node::Im(a) => Ok(Cx::from_real(eval_node(a, b)?.im)),
        Node::Conj(a) => Ok(eval_node(a, b)?.conj()),
        Node::Abs(a) => {
            let w = eval_node(a, b)?;
            let q = w.normsq();
            if R::CARRIES_DERIVATIVES && q.value().to_f64().unwrap_or(0.0) < NEAR_ZERO_SQ {
                return Err(DslError::NearZeroNonsmooth {
                    pos: e.pos,
                    function: "abs".to_string(),
                });
            }
            Ok(Cx::from_real(q.sqrt()))
        }
        Node::Sqrt(a) => {
            let w = eval_node(a, b)?;
            let re = w.re.value().to_f64().unwrap_or(f64::NAN);
            let im = w.im.value().to_f64().unwrap_or(f64::NAN);
            if im.abs() <= 1e-12 * (1.0 + re.abs()) && re < 0.0 {
                return Err(DslError::SqrtOfNegativeReal { pos: e.pos });
            }
            if re * re + im * im < NEAR_ZERO_SQ {
                if R::CARRIES_DERIVATIVES {
                    return Err(DslError::NearZeroNonsmooth {
                        pos: e.pos,
                        function: "sqrt".to_string(),
                    });
                }
                return Ok(Cx::zero());
            }
            Ok(w.sqrt())
        }
        Node::NormSq(g) => Ok(Cx::from_real(normsq_slice(group_slice(b, *g)))),
        Node::Herm(g1, g2) => Ok(herm(group_slice(b, *g1), group_slice(b, *g2))),
    }
}

/// Evaluate an expression to a complex value.
pub fn eval<R: Coeff>(me: &MetricExpr, b: &Bindings<'_, R>) -> Result<Cx<R>, DslError> {
    debug_assert_eq!(b.base.len(), me.dim);
    debug_assert_eq!(b.tangent.len(), me.dim);
    debug_assert_eq!(b.params.len(), me.param_names.len());
    eval_node(&me.root, b)
}

/// Evaluate an expression that is supposed to define a metric, i.e. to be
/// real-valued: checks that the imaginary part of the value is below
/// [`IM_TOL`] in magnitude and returns the real part.
pub fn eval_metric_value<R: Coeff>(me: &MetricExpr, b: &Bindings<'_, R>) -> Result<R, DslError> {
    let w = eval(me, b)?;
    let im = w.im.value().to_f64().unwrap_or(f64::NAN);
    if !(im.abs() <= IM_TOL) {
        return Err(DslError::ResidualImaginaryPart {
            imaginary: im,
            tolerance: IM_TOL,
        });
    }
    Ok(w.re)
}

/// Shared handle to a parsed expression, as stored inside a metric.
pub type SharedExpr = Arc<MetricExpr>;
