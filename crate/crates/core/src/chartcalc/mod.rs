//! Symbolic calculus for smooth functions of the ambient and chart variables.
//!
//! Expressions live in an [`ExprPool`] arena and are hash-consed, so equal
//! subtrees share one [`ExprId`]. Derivatives are memoized per node and
//! variable. The [`Node::Apply`] node substitutes expressions for the
//! variables of an inner expression; reflections, the chart lift and the
//! restriction to the null cone are all expressed with it.

mod ambient;
mod diff;
mod eval;
mod parse;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{ElemFn, Exact};

pub use ambient::{
    ambient_dunkl_laplacian_expr, density_to_ambient, flat_laplacian_expr, linear_form, perturb_extension,
    poly_to_expr, quadratic_form_expr, reflect_expr, restrict_to_cone, Density,
};
pub use eval::{eval, eval_f64, EvalError, EvalErrorKind, Evaluator};
pub use parse::{ambient_var_names, chart_var_names, parse_expr, ParseExprError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExprId(u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArgsId(u32);

impl ExprId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Const(Exact),
    Var(u16),
    Add(ExprId, ExprId),
    Mul(ExprId, ExprId),
    Div(ExprId, ExprId),
    PowI(ExprId, i32),
    /// Real power; the base must be positive where evaluated.
    PowR(ExprId, Exact),
    Func(ElemFn, ExprId),
    /// `inner(args₀, args₁, …)`: the inner expression's variable `k` is bound to `args[k]`.
    Apply(ExprId, ArgsId),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("expression pool exceeded {cap} nodes")]
    TooLarge { cap: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// Arena of hash-consed expression nodes.
#[derive(Clone, Debug)]
pub struct ExprPool {
    nodes: Vec<Node>,
    approx: Vec<f64>,
    nfree: Vec<u16>,
    index: HashMap<Node, ExprId>,
    args: Vec<Vec<ExprId>>,
    args_index: HashMap<Vec<ExprId>, ArgsId>,
    dcache: HashMap<(ExprId, u16), ExprId>,
    cap: usize,
}

impl Default for ExprPool {
    fn default() -> Self {
        Self::new()
    }
}

impl ExprPool {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_NODE_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        ExprPool {
            nodes: Vec::new(),
            approx: Vec::new(),
            nfree: Vec::new(),
            index: HashMap::new(),
            args: Vec::new(),
            args_index: HashMap::new(),
            dcache: HashMap::new(),
            cap,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check_size(&self) -> Result<(), ExprError> {
        if self.nodes.len() > self.cap {
            Err(ExprError::TooLarge { cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn node(&self, id: ExprId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn args(&self, a: ArgsId) -> &[ExprId] {
        &self.args[a.0 as usize]
    }

    /// One more than the largest variable index the expression depends on.
    pub fn nfree(&self, id: ExprId) -> usize {
        self.nfree[id.index()] as usize
    }

    pub(crate) fn approx(&self, id: ExprId) -> f64 {
        self.approx[id.index()]
    }

    fn intern(&mut self, node: Node) -> ExprId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let (approx, nfree) = match &node {
            Node::Const(c) => (c.to_f64(), 0),
            Node::Var(i) => (f64::NAN, i + 1),
            Node::Add(a, b) | Node::Mul(a, b) | Node::Div(a, b) => (f64::NAN, self.nfree[a.index()].max(self.nfree[b.index()])),
            Node::PowI(a, _) | Node::PowR(a, _) | Node::Func(_, a) => (f64::NAN, self.nfree[a.index()]),
            Node::Apply(_, args) => (f64::NAN, self.args[args.0 as usize].iter().map(|x| self.nfree[x.index()]).max().unwrap_or(0)),
        };
        let id = ExprId(u32::try_from(self.nodes.len()).expect("expression pool overflow"));
        self.nodes.push(node.clone());
        self.approx.push(approx);
        self.nfree.push(nfree);
        self.index.insert(node, id);
        id
    }

    fn intern_args(&mut self, args: Vec<ExprId>) -> ArgsId {
        if let Some(&a) = self.args_index.get(&args) {
            return a;
        }
        let a = ArgsId(self.args.len() as u32);
        self.args.push(args.clone());
        self.args_index.insert(args, a);
        a
    }

    pub fn as_const(&self, id: ExprId) -> Option<&Exact> {
        match self.node(id) {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self, id: ExprId) -> bool {
        self.as_const(id).is_some_and(|c| c.is_zero())
    }

    pub fn is_one(&self, id: ExprId) -> bool {
        self.as_const(id).is_some_and(|c| c.is_one())
    }

    pub fn constant(&mut self, c: Exact) -> ExprId {
        self.intern(Node::Const(c))
    }

    pub fn int(&mut self, v: i64) -> ExprId {
        self.constant(Exact::int(v))
    }

    pub fn zero(&mut self) -> ExprId {
        self.int(0)
    }

    pub fn one(&mut self) -> ExprId {
        self.int(1)
    }

    pub fn var(&mut self, i: usize) -> ExprId {
        self.intern(Node::Var(u16::try_from(i).expect("too many variables")))
    }

    pub fn add(&mut self, a: ExprId, b: ExprId) -> ExprId {
        if self.is_zero(a) {
            return b;
        }
        if self.is_zero(b) {
            return a;
        }
        if let (Some(x), Some(y)) = (self.as_const(a), self.as_const(b)) {
            let s = x + y;
            return self.constant(s);
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.intern(Node::Add(a, b))
    }

    pub fn sum(&mut self, items: impl IntoIterator<Item = ExprId>) -> ExprId {
        let mut acc = self.zero();
        for e in items {
            acc = self.add(acc, e);
        }
        acc
    }

    pub fn neg(&mut self, a: ExprId) -> ExprId {
        let m = self.int(-1);
        self.mul(m, a)
    }

    pub fn sub(&mut self, a: ExprId, b: ExprId) -> ExprId {
        let nb = self.neg(b);
        self.add(a, nb)
    }

    pub fn mul(&mut self, a: ExprId, b: ExprId) -> ExprId {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        if self.is_one(a) {
            return b;
        }
        if self.is_one(b) {
            return a;
        }
        let (a, b) = match (self.as_const(a), self.as_const(b)) {
            (Some(x), Some(y)) => {
                let p = x * y;
                return self.constant(p);
            }
            (None, Some(_)) => (b, a),
            _ => (a, b),
        };
        // c·(d·y) = (cd)·y
        if let (Some(c), Node::Mul(l, r)) = (self.as_const(a), self.node(b)) {
            if let Some(d) = self.as_const(*l) {
                let (cd, r) = (c * d, *r);
                let k = self.constant(cd);
                return self.mul(k, r);
            }
        }
        let (a, b) = if self.as_const(a).is_some() || a <= b { (a, b) } else { (b, a) };
        self.intern(Node::Mul(a, b))
    }

    pub fn product(&mut self, items: impl IntoIterator<Item = ExprId>) -> ExprId {
        let mut acc = self.one();
        for e in items {
            acc = self.mul(acc, e);
        }
        acc
    }

    pub fn scale(&mut self, c: &Exact, a: ExprId) -> ExprId {
        let k = self.constant(c.clone());
        self.mul(k, a)
    }

    pub fn div(&mut self, a: ExprId, b: ExprId) -> ExprId {
        if self.is_zero(a) {
            return a;
        }
        if let Some(inv) = self.as_const(b).and_then(Exact::inv) {
            let k = self.constant(inv);
            return self.mul(k, a);
        }
        if a == b {
            return self.one();
        }
        self.intern(Node::Div(a, b))
    }

    pub fn powi(&mut self, a: ExprId, e: i32) -> ExprId {
        match e {
            0 => return self.one(),
            1 => return a,
            _ => {}
        }
        if let Some(v) = self.as_const(a).and_then(|c| c.pow(e)) {
            return self.constant(v);
        }
        if let Node::PowI(base, k) = *self.node(a) {
            if let Some(ke) = k.checked_mul(e) {
                return self.powi(base, ke);
            }
        }
        self.intern(Node::PowI(a, e))
    }

    pub fn powr(&mut self, a: ExprId, e: Exact) -> ExprId {
        if let Some(i) = e.as_rational().filter(|r| r.is_integer()).and_then(|r| num_traits::ToPrimitive::to_i32(&r.to_integer())) {
            return self.powi(a, i);
        }
        if self.is_one(a) {
            return a;
        }
        self.intern(Node::PowR(a, e))
    }

    pub fn func(&mut self, f: ElemFn, a: ExprId) -> ExprId {
        if let Some(v) = self.as_const(a).and_then(|c| crate::scalar::Scalar::elem(c, f)) {
            return self.constant(v);
        }
        self.intern(Node::Func(f, a))
    }

    /// Substitutes `args[k]` for variable `k` of `e`.
    pub fn apply(&mut self, e: ExprId, args: &[ExprId]) -> ExprId {
        let nf = self.nfree(e);
        assert!(args.len() >= nf, "expression uses {nf} variables, {} supplied", args.len());
        match self.node(e).clone() {
            Node::Const(_) => return e,
            Node::Var(i) => return args[i as usize],
            Node::Apply(inner, a1) => {
                let inner_args = self.args(a1).to_vec();
                let composed: Vec<ExprId> = inner_args.iter().map(|&x| self.apply(x, args)).collect();
                return self.apply(inner, &composed);
            }
            _ => {}
        }
        let args = &args[..nf];
        if args.iter().enumerate().all(|(k, &a)| self.node(a) == &Node::Var(k as u16)) {
            return e;
        }
        let a = self.intern_args(args.to_vec());
        self.intern(Node::Apply(e, a))
    }

    /// `∂e/∂xᵢ`.
    pub fn derivative(&mut self, e: ExprId, i: usize) -> ExprId {
        diff::derivative(self, e, i)
    }

    /// `Σ ξⁱ ∂e/∂xᵢ`.
    pub fn directional(&mut self, e: ExprId, xi: &[Exact]) -> ExprId {
        let mut terms = Vec::new();
        for (i, c) in xi.iter().enumerate() {
            if !c.is_zero() {
                let d = self.derivative(e, i);
                terms.push(self.scale(c, d));
            }
        }
        self.sum(terms)
    }

    /// Number of distinct nodes reachable from `e`, following `Apply` into inner expressions.
    pub fn reachable(&self, e: ExprId) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![e];
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            match self.node(id) {
                Node::Const(_) | Node::Var(_) => {}
                Node::Add(a, b) | Node::Mul(a, b) | Node::Div(a, b) => stack.extend([*a, *b]),
                Node::PowI(a, _) | Node::PowR(a, _) | Node::Func(_, a) => stack.push(*a),
                Node::Apply(inner, args) => {
                    stack.push(*inner);
                    stack.extend(self.args(*args).iter().copied());
                }
            }
        }
        seen.len()
    }

    /// Infix rendering with variables named by `names`; inner `Apply` expressions use `_k`.
    pub fn display<'a>(&'a self, e: ExprId, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay { pool: self, id: e, names }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, id: ExprId, names: Option<&[String]>, prec: u8) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, need: bool, open: bool| {
            if need {
                f.write_str(if open { "(" } else { ")" })
            } else {
                Ok(())
            }
        };
        match self.node(id) {
            Node::Const(c) => {
                let s = c.to_string();
                let compound = s.contains(['/', '+', '*']) || s[1..].contains('-') || s.starts_with('-');
                paren(f, compound && prec > 0, true)?;
                f.write_str(&s)?;
                paren(f, compound && prec > 0, false)
            }
            Node::Var(i) => match names.and_then(|n| n.get(*i as usize)) {
                Some(name) => f.write_str(name),
                None => write!(f, "_{i}"),
            },
            Node::Add(a, b) => {
                paren(f, prec > 0, true)?;
                self.write(f, *a, names, 0)?;
                f.write_str(" + ")?;
                self.write(f, *b, names, 0)?;
                paren(f, prec > 0, false)
            }
            Node::Mul(a, b) | Node::Div(a, b) => {
                paren(f, prec > 1, true)?;
                self.write(f, *a, names, 1)?;
                f.write_str(if matches!(self.node(id), Node::Mul(..)) { "*" } else { "/" })?;
                self.write(f, *b, names, 2)?;
                paren(f, prec > 1, false)
            }
            Node::PowI(a, e) => {
                self.write(f, *a, names, 3)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
            Node::PowR(a, e) => {
                self.write(f, *a, names, 3)?;
                write!(f, "^({e})")
            }
            Node::Func(func, a) => {
                let name = match func {
                    ElemFn::Exp => "exp",
                    ElemFn::Ln => "ln",
                    ElemFn::Sin => "sin",
                    ElemFn::Cos => "cos",
                };
                write!(f, "{name}(")?;
                self.write(f, *a, names, 0)?;
                f.write_str(")")
            }
            Node::Apply(inner, args) => {
                f.write_str("{")?;
                self.write(f, *inner, None, 0)?;
                f.write_str("}(")?;
                for (k, a) in self.args(*args).iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    self.write(f, *a, names, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

pub struct ExprDisplay<'a> {
    pool: &'a ExprPool,
    id: ExprId,
    names: &'a [String],
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pool.write(f, self.id, Some(self.names), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_consing_and_folding() {
        let mut p = ExprPool::new();
        let x = p.var(0);
        let y = p.var(1);
        let a = p.add(x, y);
        let b = p.add(y, x);
        assert_eq!(a, b);
        let two = p.int(2);
        let three = p.int(3);
        let six = p.mul(two, three);
        assert_eq!(p.as_const(six), Some(&Exact::int(6)));
        let t = p.mul(two, x);
        let t = p.mul(three, t);
        assert_eq!(p.node(t), &Node::Mul(six, x));
        let q = p.div(a, a);
        assert!(p.is_one(q));
    }

    #[test]
    fn apply_substitutes_and_flattens() {
        let mut p = ExprPool::new();
        let x = p.var(0);
        let y = p.var(1);
        let f = p.mul(x, y);
        let two = p.int(2);
        let g = p.apply(f, &[two, x]);
        assert_eq!(p.nfree(g), 1);
        let h = p.apply(g, &[y]);
        let Node::Apply(inner, args) = p.node(h).clone() else { panic!() };
        assert_eq!(inner, f);
        assert_eq!(p.args(args), &[two, y]);
        assert_eq!(p.apply(f, &[x, y]), f);
        assert_eq!(p.apply(x, &[y]), y);
    }

    #[test]
    fn rendering() {
        let mut p = ExprPool::new();
        let x = p.var(0);
        let y = p.var(1);
        let s = p.add(x, y);
        let e = p.powi(s, 2);
        let e = p.scale(&Exact::frac(1, 2), e);
        let names = vec!["x1".to_string(), "x2".to_string()];
        assert_eq!(p.display(e, &names).to_string(), "(1/2)*(x1 + x2)^2");
    }
}
