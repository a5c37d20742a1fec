//! Evaluation of closed fixpoint terms over a pluggable complete lattice.
//!
//! Fixpoints are computed by plain iteration from bottom (least) or top
//! (greatest) with equality detection, recording the full approximant
//! chains. Nested fixpoints are re-evaluated from scratch inside every
//! iteration of their enclosing fixpoint. An iteration budget turns a
//! diverging chain on an infinite lattice into a diagnosable error.

use std::fmt;

use thiserror::Error;

use super::term::MuTerm;

/// What passing through an operator argument does for guardedness: nothing,
/// or placing the subterm under an upward/downward closure or interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardKind {
    Plain,
    Up,
    Down,
}

/// Registry metadata for one named operator.
#[derive(Debug, Clone)]
pub struct OperatorInfo {
    pub arity: usize,
    /// One entry per argument; missing entries are treated as `Plain`.
    pub arg_guards: Vec<GuardKind>,
    /// Declared (and separately tested) monotonicity. Non-monotone helpers
    /// may only be applied to variable-free subterms.
    pub monotone: bool,
}

impl OperatorInfo {
    pub fn plain(arity: usize) -> Self {
        OperatorInfo { arity, arg_guards: vec![GuardKind::Plain; arity], monotone: true }
    }

    pub fn guarded(arg_guards: Vec<GuardKind>) -> Self {
        OperatorInfo { arity: arg_guards.len(), arg_guards, monotone: true }
    }

    pub fn non_monotone(arity: usize) -> Self {
        OperatorInfo { arity, arg_guards: vec![GuardKind::Plain; arity], monotone: false }
    }
}

/// A complete lattice with decidable equality and a registry of named
/// monotone operators and constants. `join`/`meet` are reserved operator
/// names handled by the evaluator itself.
pub trait Lattice {
    type Elem: Clone;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn constant(&self, name: &str) -> Option<Self::Elem>;
    fn operator_info(&self, name: &str) -> Option<OperatorInfo>;
    /// Apply a registered operator. The evaluator has already checked that
    /// the operator resolves and the arity matches.
    fn apply(&self, name: &str, args: &[Self::Elem]) -> Self::Elem;

    /// A size metric for trace dumps.
    fn element_size(&self, _e: &Self::Elem) -> usize {
        0
    }

    /// The lattice order, derived from join and equality.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.equal(&self.join(a, b), b)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("term is not closed: free variable '{0}'")]
    NotClosed(String),
    #[error("operator '{0}' is not registered in the lattice")]
    UnresolvedOperator(String),
    #[error("operator '{op}' expects {expected} arguments, got {got}")]
    ArityMismatch { op: String, expected: usize, got: usize },
    #[error("constant '{0}' is not registered in the lattice")]
    UnknownConstant(String),
    #[error("non-monotone operator '{op}' applied to a subterm containing variable '{var}'")]
    PositivityViolation { op: String, var: String },
    #[error("iteration budget of {limit} exhausted at {path}")]
    BudgetExhausted { path: String, limit: u64 },
    #[error("non-monotone behavior detected during evaluation at {0}")]
    NonMonotone(String),
    #[error("term root is not a fixpoint")]
    NotAFixpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixKind {
    Mu,
    Nu,
}

impl fmt::Display for FixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixKind::Mu => write!(f, "mu"),
            FixKind::Nu => write!(f, "nu"),
        }
    }
}

/// The approximant chain of one fixpoint evaluation. Chains start at
/// bottom (μ) or top (ν) and end with two equal elements.
#[derive(Debug, Clone)]
pub struct FixpointTrace<E> {
    /// Position of this evaluation in the term, e.g. `nu(X)[2]/mu(Z)`.
    pub path: String,
    pub kind: FixKind,
    pub approximants: Vec<E>,
}

impl<E> FixpointTrace<E> {
    /// Index at which the chain became stationary.
    pub fn convergence_index(&self) -> usize {
        self.approximants.len().saturating_sub(2)
    }
}

/// All fixpoint chains recorded during one evaluation, in completion order.
#[derive(Debug, Clone)]
pub struct ApproximantTrace<E> {
    pub fixpoints: Vec<FixpointTrace<E>>,
}

impl<E> Default for ApproximantTrace<E> {
    fn default() -> Self {
        ApproximantTrace { fixpoints: Vec::new() }
    }
}

impl<E> ApproximantTrace<E> {
    /// One line per approximant: `<fixpoint-path> <iteration> <size>`.
    pub fn dump_lines<L>(&self, lattice: &L) -> Vec<String>
    where
        L: Lattice<Elem = E>,
    {
        let mut out = Vec::new();
        for fx in &self.fixpoints {
            for (i, e) in fx.approximants.iter().enumerate() {
                out.push(format!("{} {} {}", fx.path, i, lattice.element_size(e)));
            }
        }
        out
    }

    /// Check that μ-chains increase and ν-chains decrease.
    pub fn check_monotone<L>(&self, lattice: &L) -> Result<(), String>
    where
        L: Lattice<Elem = E>,
    {
        for fx in &self.fixpoints {
            for w in fx.approximants.windows(2) {
                let ok = match fx.kind {
                    FixKind::Mu => lattice.leq(&w[0], &w[1]),
                    FixKind::Nu => lattice.leq(&w[1], &w[0]),
                };
                if !ok {
                    return Err(format!("chain at {} is not {}-monotone", fx.path, fx.kind));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct EvalOptions {
    /// Budget per fixpoint chain; `None` iterates unboundedly.
    pub max_iterations: Option<u64>,
    /// Fail fast with [`EvalError::NonMonotone`] if an approximant chain
    /// stops being monotone (one extra join+equality per iteration).
    pub check_chains: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_iterations: Some(10_000), check_chains: false }
    }
}

impl EvalOptions {
    pub fn with_budget(budget: u64) -> Self {
        EvalOptions { max_iterations: Some(budget), ..Default::default() }
    }
}

/// Check that a term is closed, every operator resolves with the right
/// arity, constants resolve, and non-monotone operators are only applied to
/// variable-free subterms.
pub fn validate<L: Lattice>(term: &MuTerm, lattice: &L) -> Result<(), EvalError> {
    fn go<L: Lattice>(
        term: &MuTerm,
        lattice: &L,
        bound: &mut Vec<String>,
    ) -> Result<(), EvalError> {
        match term {
            MuTerm::Var(x) => {
                if bound.iter().any(|b| b == x) {
                    Ok(())
                } else {
                    Err(EvalError::NotClosed(x.clone()))
                }
            }
            MuTerm::Const(c) => {
                lattice.constant(c).map(|_| ()).ok_or(EvalError::UnknownConstant(c.clone()))
            }
            MuTerm::Mu(v, body) | MuTerm::Nu(v, body) => {
                bound.push(v.clone());
                let r = go(body, lattice, bound);
                bound.pop();
                r
            }
            MuTerm::Op(op, args) => {
                if op == "join" || op == "meet" {
                    if args.is_empty() {
                        return Err(EvalError::ArityMismatch {
                            op: op.clone(),
                            expected: 1,
                            got: 0,
                        });
                    }
                } else {
                    let info = lattice
                        .operator_info(op)
                        .ok_or_else(|| EvalError::UnresolvedOperator(op.clone()))?;
                    if info.arity != args.len() {
                        return Err(EvalError::ArityMismatch {
                            op: op.clone(),
                            expected: info.arity,
                            got: args.len(),
                        });
                    }
                    if !info.monotone {
                        for a in args {
                            if let Some(v) = a.free_vars().into_iter().next() {
                                return Err(EvalError::PositivityViolation {
                                    op: op.clone(),
                                    var: v,
                                });
                            }
                        }
                    }
                }
                for a in args {
                    go(a, lattice, bound)?;
                }
                Ok(())
            }
        }
    }
    go(term, lattice, &mut Vec::new())
}

struct Evaluator<'a, L: Lattice> {
    lattice: &'a L,
    opts: &'a EvalOptions,
    trace: ApproximantTrace<L::Elem>,
}

impl<'a, L: Lattice> Evaluator<'a, L> {
    fn go(
        &mut self,
        term: &MuTerm,
        env: &mut Vec<(String, L::Elem)>,
        path: &str,
    ) -> Result<L::Elem, EvalError> {
        match term {
            MuTerm::Var(x) => Ok(env
                .iter()
                .rev()
                .find(|(v, _)| v == x)
                .expect("validated term has bound variables only")
                .1
                .clone()),
            MuTerm::Const(c) => Ok(self.lattice.constant(c).expect("validated constant")),
            MuTerm::Op(op, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.go(a, env, path)?);
                }
                if op == "join" {
                    let mut acc = vals[0].clone();
                    for v in &vals[1..] {
                        acc = self.lattice.join(&acc, v);
                    }
                    Ok(acc)
                } else if op == "meet" {
                    let mut acc = vals[0].clone();
                    for v in &vals[1..] {
                        acc = self.lattice.meet(&acc, v);
                    }
                    Ok(acc)
                } else {
                    Ok(self.lattice.apply(op, &vals))
                }
            }
            MuTerm::Mu(v, body) => self.fixpoint(FixKind::Mu, v, body, env, path),
            MuTerm::Nu(v, body) => self.fixpoint(FixKind::Nu, v, body, env, path),
        }
    }

    fn fixpoint(
        &mut self,
        kind: FixKind,
        var: &str,
        body: &MuTerm,
        env: &mut Vec<(String, L::Elem)>,
        path: &str,
    ) -> Result<L::Elem, EvalError> {
        let label = if path.is_empty() {
            format!("{kind}({var})")
        } else {
            format!("{path}/{kind}({var})")
        };
        let mut cur = match kind {
            FixKind::Mu => self.lattice.bottom(),
            FixKind::Nu => self.lattice.top(),
        };
        let mut approximants = vec![cur.clone()];
        let mut iter: u64 = 0;
        let result = loop {
            if let Some(limit) = self.opts.max_iterations {
                if iter >= limit {
                    return Err(EvalError::BudgetExhausted { path: label, limit });
                }
            }
            let iter_path = format!("{label}[{iter}]");
            env.push((var.to_string(), cur.clone()));
            let next = self.go(body, env, &iter_path);
            env.pop();
            let next = next?;
            if self.opts.check_chains {
                let ok = match kind {
                    FixKind::Mu => self.lattice.leq(&cur, &next),
                    FixKind::Nu => self.lattice.leq(&next, &cur),
                };
                if !ok {
                    return Err(EvalError::NonMonotone(iter_path));
                }
            }
            approximants.push(next.clone());
            if self.lattice.equal(&cur, &next) {
                break cur;
            }
            cur = next;
            iter += 1;
        };
        self.trace.fixpoints.push(FixpointTrace { path: label, kind, approximants });
        Ok(result)
    }
}

/// Evaluate a closed term. Least fixpoints iterate from bottom, greatest
/// from top; nested fixpoints are recomputed inside each outer iteration.
pub fn eval<L: Lattice>(
    term: &MuTerm,
    lattice: &L,
    opts: &EvalOptions,
) -> Result<(L::Elem, ApproximantTrace<L::Elem>), EvalError> {
    validate(term, lattice)?;
    let mut ev = Evaluator { lattice, opts, trace: ApproximantTrace::default() };
    let value = ev.go(term, &mut Vec::new(), "")?;
    Ok((value, ev.trace))
}

/// Decide guardedness: every μ-bound variable must occur under an
/// upward closure/interior within its body, and every ν-bound variable
/// under a downward one. Operator argument metadata determines which
/// applications count as such a scope. Total: unknown operators contribute
/// no guards, free variables are ignored.
pub fn check_guarded<L: Lattice>(term: &MuTerm, lattice: &L) -> bool {
    // (variable, required guard, satisfied on this path)
    fn walk<L: Lattice>(term: &MuTerm, lattice: &L, pending: &[(String, GuardKind, bool)]) -> bool {
        match term {
            MuTerm::Const(_) => true,
            MuTerm::Var(x) => pending
                .iter()
                .rev()
                .find(|(v, _, _)| v == x)
                .map(|&(_, _, satisfied)| satisfied)
                .unwrap_or(true),
            MuTerm::Mu(v, body) | MuTerm::Nu(v, body) => {
                let required = match term {
                    MuTerm::Mu(..) => GuardKind::Up,
                    _ => GuardKind::Down,
                };
                let mut inner = pending.to_vec();
                inner.push((v.clone(), required, false));
                walk(body, lattice, &inner)
            }
            MuTerm::Op(op, args) => {
                let guards: Vec<GuardKind> = if op == "join" || op == "meet" {
                    vec![GuardKind::Plain; args.len()]
                } else {
                    match lattice.operator_info(op) {
                        Some(info) => (0..args.len())
                            .map(|i| info.arg_guards.get(i).copied().unwrap_or(GuardKind::Plain))
                            .collect(),
                        None => vec![GuardKind::Plain; args.len()],
                    }
                };
                args.iter().zip(guards).all(|(arg, g)| {
                    if g == GuardKind::Plain {
                        walk(arg, lattice, pending)
                    } else {
                        let mut inner = pending.to_vec();
                        for entry in inner.iter_mut() {
                            if entry.1 == g {
                                entry.2 = true;
                            }
                        }
                        walk(arg, lattice, &inner)
                    }
                })
            }
        }
    }
    walk(term, lattice, &[])
}

/// Evaluate both sides of the contractive ν–μ identity
/// `νX.μZ.(X ∩ f(X,Z)) = νX.μZ.f(X,Z)` for a registered binary operator
/// and report whether they agree. Equality holds for every monotone `f`;
/// a `false` return therefore signals an engine bug. Chains that fail
/// monotonicity abort with [`EvalError::NonMonotone`].
pub fn verify_contractive_identity<L: Lattice>(
    op: &str,
    lattice: &L,
    opts: &EvalOptions,
) -> Result<bool, EvalError> {
    let info = lattice
        .operator_info(op)
        .ok_or_else(|| EvalError::UnresolvedOperator(op.to_string()))?;
    if info.arity != 2 {
        return Err(EvalError::ArityMismatch { op: op.to_string(), expected: 2, got: info.arity });
    }
    let f = |x: MuTerm, z: MuTerm| MuTerm::op(op, vec![x, z]);
    let lhs = MuTerm::nu(
        "X",
        MuTerm::mu(
            "Z",
            MuTerm::meet(vec![MuTerm::var("X"), f(MuTerm::var("X"), MuTerm::var("Z"))]),
        ),
    );
    let rhs = MuTerm::nu("X", MuTerm::mu("Z", f(MuTerm::var("X"), MuTerm::var("Z"))));
    let checked = EvalOptions { check_chains: true, ..opts.clone() };
    let (lv, _) = eval(&lhs, lattice, &checked)?;
    let (rv, _) = eval(&rhs, lattice, &checked)?;
    Ok(lattice.equal(&lv, &rv))
}
