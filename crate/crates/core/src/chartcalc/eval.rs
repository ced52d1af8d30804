use std::collections::HashMap;

use thiserror::Error;

use super::{ArgsId, ExprId, ExprPool, Node};
use crate::scalar::{ElemFn, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    /// Real power of a base `≤ 0`.
    NonPositiveBase,
    ZeroToNegativePower,
    Domain(ElemFn),
    /// The operation has no exact value (transcendental or fractional power).
    NotExact,
    MissingVariable(usize),
    NonFinite,
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("{kind:?} at node {}", node.index())]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub node: ExprId,
}

struct Frame<S> {
    vars: Vec<S>,
    values: HashMap<ExprId, S>,
}

/// Evaluates expressions at one point; shares work between calls and between
/// identical substitutions.
pub struct Evaluator<'p, S> {
    pool: &'p ExprPool,
    frames: Vec<Frame<S>>,
    frame_index: HashMap<(usize, ArgsId), usize>,
}

enum Step<S> {
    Ready(S),
    Need(Vec<(ExprId, usize)>),
}

impl<'p, S: Scalar> Evaluator<'p, S> {
    pub fn new(pool: &'p ExprPool, point: &[S]) -> Self {
        Evaluator {
            pool,
            frames: vec![Frame { vars: point.to_vec(), values: HashMap::new() }],
            frame_index: HashMap::new(),
        }
    }

    pub fn eval(&mut self, id: ExprId) -> Result<S, EvalError> {
        let mut stack = vec![(id, 0usize)];
        while let Some(&(node, fr)) = stack.last() {
            if self.frames[fr].values.contains_key(&node) {
                stack.pop();
                continue;
            }
            match self.step(node, fr)? {
                Step::Ready(v) => {
                    if !S::EXACT && !v.to_f64().is_finite() {
                        return Err(EvalError { kind: EvalErrorKind::NonFinite, node });
                    }
                    self.frames[fr].values.insert(node, v);
                    stack.pop();
                }
                Step::Need(list) => stack.extend(list),
            }
        }
        Ok(self.frames[0].values[&id].clone())
    }

    fn get(&self, id: ExprId, fr: usize, need: &mut Vec<(ExprId, usize)>) -> Option<S> {
        let v = self.frames[fr].values.get(&id).cloned();
        if v.is_none() {
            need.push((id, fr));
        }
        v
    }

    fn step(&mut self, id: ExprId, fr: usize) -> Result<Step<S>, EvalError> {
        let err = |kind| EvalError { kind, node: id };
        let mut need = Vec::new();
        let pool = self.pool;
        let node = pool.node(id);
        let v = match node {
            Node::Const(c) => S::from_const(c, pool.approx(id)),
            Node::Var(i) => {
                let i = *i as usize;
                self.frames[fr].vars.get(i).cloned().ok_or(err(EvalErrorKind::MissingVariable(i)))?
            }
            Node::Add(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                let x = self.get(*a, fr, &mut need);
                let y = self.get(*b, fr, &mut need);
                let (Some(x), Some(y)) = (x, y) else {
                    return Ok(Step::Need(need));
                };
                match node {
                    Node::Add(..) => x + y,
                    Node::Mul(..) => x * y,
                    _ => {
                        if y.is_zero() {
                            return Err(err(EvalErrorKind::DivisionByZero));
                        }
                        x / y
                    }
                }
            }
            Node::PowI(a, e) => {
                let Some(x) = self.get(*a, fr, &mut need) else {
                    return Ok(Step::Need(need));
                };
                x.powi(*e).ok_or(err(EvalErrorKind::ZeroToNegativePower))?
            }
            Node::PowR(a, e) => {
                let Some(x) = self.get(*a, fr, &mut need) else {
                    return Ok(Step::Need(need));
                };
                if x.signum() <= 0 {
                    return Err(err(EvalErrorKind::NonPositiveBase));
                }
                x.powr(e).ok_or(err(EvalErrorKind::NotExact))?
            }
            Node::Func(f, a) => {
                let Some(x) = self.get(*a, fr, &mut need) else {
                    return Ok(Step::Need(need));
                };
                if *f == ElemFn::Ln && x.signum() <= 0 {
                    return Err(err(EvalErrorKind::Domain(ElemFn::Ln)));
                }
                x.elem(*f).ok_or(err(if S::EXACT { EvalErrorKind::NotExact } else { EvalErrorKind::Domain(*f) }))?
            }
            Node::Apply(inner, args) => {
                let (inner, args) = (*inner, *args);
                let vals: Vec<Option<S>> = pool.args(args).iter().map(|&a| self.get(a, fr, &mut need)).collect();
                if !need.is_empty() {
                    return Ok(Step::Need(need));
                }
                let child = match self.frame_index.get(&(fr, args)) {
                    Some(&c) => c,
                    None => {
                        let vars = vals.into_iter().map(|v| v.expect("checked")).collect();
                        self.frames.push(Frame { vars, values: HashMap::new() });
                        let c = self.frames.len() - 1;
                        self.frame_index.insert((fr, args), c);
                        c
                    }
                };
                match self.get(inner, child, &mut need) {
                    Some(v) => v,
                    None => return Ok(Step::Need(need)),
                }
            }
        };
        Ok(Step::Ready(v))
    }
}

pub fn eval<S: Scalar>(pool: &ExprPool, id: ExprId, point: &[S]) -> Result<S, EvalError> {
    Evaluator::new(pool, point).eval(id)
}

pub fn eval_f64(pool: &ExprPool, id: ExprId, point: &[f64]) -> Result<f64, EvalError> {
    eval(pool, id, point)
}
