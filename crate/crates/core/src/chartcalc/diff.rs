use super::{ExprId, ExprPool, Node};
use crate::scalar::{ElemFn, Exact};

/// Memoized `∂e/∂xᵢ`, computed with an explicit work stack so deep
/// expressions do not exhaust the call stack.
pub(super) fn derivative(pool: &mut ExprPool, e: ExprId, i: usize) -> ExprId {
    let var = u16::try_from(i).expect("variable index");
    let mut stack = vec![(e, var)];
    while let Some(&(id, v)) = stack.last() {
        if pool.dcache.contains_key(&(id, v)) {
            stack.pop();
            continue;
        }
        match step(pool, id, v) {
            Ok(d) => {
                pool.dcache.insert((id, v), d);
                stack.pop();
            }
            Err(missing) => stack.extend(missing),
        }
    }
    pool.dcache[&(e, var)]
}

fn cached(pool: &ExprPool, id: ExprId, v: u16, missing: &mut Vec<(ExprId, u16)>) -> Option<ExprId> {
    if (v as usize) >= pool.nfree(id) {
        // constant in this variable
        return None;
    }
    match pool.dcache.get(&(id, v)) {
        Some(&d) => Some(d),
        None => {
            missing.push((id, v));
            None
        }
    }
}

/// Derivative of one node given those of its children, or the list of children still needed.
fn step(pool: &mut ExprPool, id: ExprId, v: u16) -> Result<ExprId, Vec<(ExprId, u16)>> {
    if (v as usize) >= pool.nfree(id) {
        return Ok(pool.zero());
    }
    let node = pool.node(id).clone();
    let mut missing = Vec::new();
    let zero = pool.zero();
    match node {
        Node::Const(_) => Ok(zero),
        Node::Var(j) => Ok(if j == v { pool.one() } else { zero }),
        Node::Add(a, b) => {
            let da = cached(pool, a, v, &mut missing);
            let db = cached(pool, b, v, &mut missing);
            if !missing.is_empty() {
                return Err(missing);
            }
            Ok(pool.add(da.unwrap_or(zero), db.unwrap_or(zero)))
        }
        Node::Mul(a, b) => {
            let da = cached(pool, a, v, &mut missing);
            let db = cached(pool, b, v, &mut missing);
            if !missing.is_empty() {
                return Err(missing);
            }
            let l = pool.mul(da.unwrap_or(zero), b);
            let r = pool.mul(a, db.unwrap_or(zero));
            Ok(pool.add(l, r))
        }
        Node::Div(a, b) => {
            let da = cached(pool, a, v, &mut missing);
            let db = cached(pool, b, v, &mut missing);
            if !missing.is_empty() {
                return Err(missing);
            }
            // a'/b − a·b'/b²
            let first = pool.div(da.unwrap_or(zero), b);
            let b2 = pool.powi(b, 2);
            let ab = pool.mul(a, db.unwrap_or(zero));
            let second = pool.div(ab, b2);
            Ok(pool.sub(first, second))
        }
        Node::PowI(a, k) => {
            let Some(da) = cached(pool, a, v, &mut missing) else {
                return if missing.is_empty() { Ok(zero) } else { Err(missing) };
            };
            let p = pool.powi(a, k - 1);
            let p = pool.scale(&Exact::int(k as i64), p);
            Ok(pool.mul(p, da))
        }
        Node::PowR(a, r) => {
            let Some(da) = cached(pool, a, v, &mut missing) else {
                return if missing.is_empty() { Ok(zero) } else { Err(missing) };
            };
            let p = pool.powr(a, &r - &Exact::int(1));
            let p = pool.scale(&r, p);
            Ok(pool.mul(p, da))
        }
        Node::Func(f, a) => {
            let Some(da) = cached(pool, a, v, &mut missing) else {
                return if missing.is_empty() { Ok(zero) } else { Err(missing) };
            };
            let outer = match f {
                ElemFn::Exp => id,
                ElemFn::Ln => {
                    let one = pool.one();
                    pool.div(one, a)
                }
                ElemFn::Sin => pool.func(ElemFn::Cos, a),
                ElemFn::Cos => {
                    let s = pool.func(ElemFn::Sin, a);
                    pool.neg(s)
                }
            };
            Ok(pool.mul(outer, da))
        }
        Node::Apply(inner, args) => {
            // ∂ᵥ inner(args) = Σₖ (∂ₖ inner)(args) · ∂ᵥ argsₖ
            let args = pool.args(args).to_vec();
            let dargs: Vec<Option<ExprId>> = args.iter().map(|&a| cached(pool, a, v, &mut missing)).collect();
            if !missing.is_empty() {
                return Err(missing);
            }
            let mut inner_d = Vec::new();
            for (k, da) in dargs.iter().enumerate() {
                if da.is_some_and(|d| !pool.is_zero(d)) {
                    inner_d.push(cached(pool, inner, k as u16, &mut missing));
                } else {
                    inner_d.push(None);
                }
            }
            if !missing.is_empty() {
                return Err(missing);
            }
            let mut terms = Vec::new();
            for (dk, da) in inner_d.into_iter().zip(dargs) {
                if let (Some(dk), Some(da)) = (dk, da) {
                    let moved = pool.apply(dk, &args);
                    terms.push(pool.mul(moved, da));
                }
            }
            Ok(pool.sum(terms))
        }
    }
}
