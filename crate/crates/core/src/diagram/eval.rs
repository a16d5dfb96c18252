use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use super::{generator_arity, Diagram, Node};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusData;
use crate::scalar::Ring;
use crate::tensor::{Circuit, CompareMode, TensorMap, Witness};
use crate::twist::TwistData;

/// The maps generator names evaluate to.
#[derive(Debug, Clone)]
pub struct Context {
    ring: Ring,
    n: usize,
    maps: BTreeMap<String, Arc<TensorMap>>,
    fingerprint: u64,
}

impl Context {
    /// A context with only `id` and `tau`.
    pub fn new(ring: Ring, n: usize) -> Result<Context> {
        let mut ctx = Context {
            ring,
            n,
            maps: BTreeMap::new(),
            fingerprint: 0,
        };
        ctx.insert("id", Arc::new(TensorMap::identity(ring, n, 1)?))?;
        ctx.insert("tau", Arc::new(TensorMap::swap(ring, n)?))?;
        Ok(ctx)
    }

    /// Every generator derivable from `f`, plus the twists when `t` is given.
    pub fn from_frobenius(f: &FrobeniusData, t: Option<&TwistData>) -> Result<Context> {
        let h = &f.h;
        let mut ctx = Context::new(h.ring(), h.n())?;
        let b = &f.braid;
        let entries = [
            ("mu", h.mu()),
            ("delta", h.delta()),
            ("eta", h.unit()),
            ("eps", h.counit()),
            ("S", h.antipode()),
            ("T", &b.t),
            ("cup", &f.cc.cup),
            ("cap", &f.cc.cap),
            ("beta1", &b.beta1),
            ("beta1inv", &b.beta1_inv),
            ("beta", &b.beta),
            ("betainv", &b.beta_inv),
            ("mu2", &f.mu2),
            ("delta2", &f.delta2),
            ("eta2", &f.eta2),
            ("eps2", &f.eps2),
        ];
        for (name, map) in entries {
            ctx.insert(name, map.clone())?;
        }
        if let Some(t) = t {
            ctx.insert("theta", t.theta.clone())?;
            ctx.insert("Theta", t.big_theta.clone())?;
            ctx.insert("thetavv", t.theta_doubled.clone())?;
        }
        Ok(ctx)
    }

    /// Binds a generator. Its shape must match the language's arity table.
    pub fn insert(&mut self, name: &str, map: Arc<TensorMap>) -> Result<()> {
        let (a, b) = generator_arity(name).ok_or_else(|| Error::Context(format!("unknown generator {name:?}")))?;
        if map.ring() != self.ring || map.n() != self.n || map.in_arity() != a || map.out_arity() != b {
            return Err(Error::Context(format!("map bound to {name:?} has the wrong shape")));
        }
        self.maps.insert(name.to_string(), map);
        let mut hasher = DefaultHasher::new();
        for (k, v) in &self.maps {
            k.hash(&mut hasher);
            v.hash(&mut hasher);
        }
        self.fingerprint = hasher.finish();
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Arc<TensorMap>> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::Context(format!("generator {name:?} is not available in this context")))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

/// Order in which sequential composites are contracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Repeatedly contract the adjacent pair with the smallest result.
    Greedy,
    LeftToRight,
}

/// Evaluates diagrams against a context, caching every subdiagram.
#[derive(Debug)]
pub struct Evaluator {
    ctx: Context,
    strategy: Strategy,
    cache: RwLock<HashMap<(u64, String), Arc<TensorMap>>>,
}

impl Evaluator {
    pub fn new(ctx: Context) -> Evaluator {
        Evaluator::with_strategy(ctx, Strategy::Greedy)
    }

    pub fn with_strategy(ctx: Context, strategy: Strategy) -> Evaluator {
        Evaluator {
            ctx,
            strategy,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    /// Arity-checks and evaluates `d`.
    pub fn evaluate(&self, d: &Diagram) -> Result<Arc<TensorMap>> {
        d.arities()?;
        self.eval(d)
    }

    fn eval(&self, d: &Diagram) -> Result<Arc<TensorMap>> {
        if let Node::Generator(name) = &d.node {
            return self.ctx.get(name).cloned();
        }
        let key = (self.ctx.fingerprint, d.to_string());
        if let Some(hit) = self.cache.read().ok().and_then(|c| c.get(&key).cloned()) {
            return Ok(hit);
        }
        let value = Arc::new(match &d.node {
            Node::Generator(_) => unreachable!("handled above"),
            Node::Power(name, k) => {
                let g = self.ctx.get(name)?;
                let mut acc = TensorMap::identity(self.ctx.ring, self.ctx.n, 0)?;
                for _ in 0..*k {
                    acc = acc.tensor(g)?;
                }
                acc
            }
            Node::Parallel(children) => {
                let maps = children.iter().map(|c| self.eval(c)).collect::<Result<Vec<_>>>()?;
                TensorMap::tensor_all(maps.iter().map(|m| m.as_ref()))?
            }
            Node::Sequential(children) => {
                let maps = children.iter().map(|c| self.eval(c)).collect::<Result<Vec<_>>>()?;
                self.contract(maps)?
            }
        });
        if let Ok(mut c) = self.cache.write() {
            c.entry(key).or_insert_with(|| value.clone());
        }
        Ok(value)
    }

    fn contract(&self, mut maps: Vec<Arc<TensorMap>>) -> Result<TensorMap> {
        if maps.is_empty() {
            return TensorMap::identity(self.ctx.ring, self.ctx.n, 0);
        }
        while maps.len() > 1 {
            let i = match self.strategy {
                Strategy::LeftToRight => 0,
                Strategy::Greedy => (0..maps.len() - 1)
                    .min_by_key(|&i| maps[i].in_dim().saturating_mul(maps[i + 1].out_dim()))
                    .expect("at least two maps"),
            };
            let joined = maps[i].compose(&maps[i + 1])?;
            maps.splice(i..=i + 1, [Arc::new(joined)]);
        }
        Ok(Arc::try_unwrap(maps.pop().expect("one map")).unwrap_or_else(|m| (*m).clone()))
    }
}

/// Result of comparing two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationOutcome {
    pub equal: bool,
    pub in_arity: usize,
    pub out_arity: usize,
    /// At most ten differing entries, ordered by input then output index.
    pub witnesses: Vec<Witness>,
}

/// Evaluates both sides and compares them exactly.
pub fn check_equation(lhs: &Diagram, rhs: &Diagram, ev: &Evaluator) -> Result<EquationOutcome> {
    let (la, lb) = lhs.arities()?;
    let (ra, rb) = rhs.arities()?;
    if (la, lb) != (ra, rb) {
        return Err(Error::Arity {
            line: rhs.pos.line,
            column: rhs.pos.column,
            message: format!("left side is {la}->{lb} but right side is {ra}->{rb}"),
        });
    }
    let l = ev.evaluate(lhs)?;
    let r = ev.evaluate(rhs)?;
    let cmp = Circuit::from_map(l).compare_in_mode(&Circuit::from_map(r), CompareMode::Dense)?;
    Ok(EquationOutcome {
        equal: cmp.equal,
        in_arity: la,
        out_arity: lb,
        witnesses: cmp.witnesses,
    })
}
