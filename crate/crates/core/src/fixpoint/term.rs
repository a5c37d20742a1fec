//! Abstract syntax for fixpoint terms over a lattice of sets.
//!
//! Terms combine named monotone operators, variables, least/greatest
//! fixpoint binders, and named constants resolved by the lattice. `join`
//! and `meet` are reserved operator names interpreted by the evaluator as
//! the lattice operations.

use std::collections::BTreeSet;
use std::fmt;

use super::eval::EvalError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuTerm {
    /// Application of a named operator from the lattice registry.
    Op(String, Vec<MuTerm>),
    Var(String),
    Mu(String, Box<MuTerm>),
    Nu(String, Box<MuTerm>),
    /// A named lattice constant.
    Const(String),
}

impl MuTerm {
    pub fn op(name: impl Into<String>, args: Vec<MuTerm>) -> Self {
        MuTerm::Op(name.into(), args)
    }

    pub fn var(name: impl Into<String>) -> Self {
        MuTerm::Var(name.into())
    }

    pub fn mu(var: impl Into<String>, body: MuTerm) -> Self {
        MuTerm::Mu(var.into(), Box::new(body))
    }

    pub fn nu(var: impl Into<String>, body: MuTerm) -> Self {
        MuTerm::Nu(var.into(), Box::new(body))
    }

    pub fn cnst(name: impl Into<String>) -> Self {
        MuTerm::Const(name.into())
    }

    /// n-ary union, interpreted by the evaluator as a fold of lattice join.
    pub fn join(args: Vec<MuTerm>) -> Self {
        MuTerm::Op("join".into(), args)
    }

    /// n-ary intersection, interpreted as a fold of lattice meet.
    pub fn meet(args: Vec<MuTerm>) -> Self {
        MuTerm::Op("meet".into(), args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(t: &MuTerm, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match t {
                MuTerm::Var(x) => {
                    if !bound.iter().any(|b| b == x) {
                        out.insert(x.clone());
                    }
                }
                MuTerm::Const(_) => {}
                MuTerm::Op(_, args) => {
                    for a in args {
                        go(a, bound, out);
                    }
                }
                MuTerm::Mu(v, body) | MuTerm::Nu(v, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Capture-avoiding substitution of `replacement` for free occurrences
    /// of `var`.
    pub fn substitute(&self, var: &str, replacement: &MuTerm) -> MuTerm {
        match self {
            MuTerm::Var(x) => {
                if x == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            MuTerm::Const(_) => self.clone(),
            MuTerm::Op(f, args) => MuTerm::Op(
                f.clone(),
                args.iter().map(|a| a.substitute(var, replacement)).collect(),
            ),
            MuTerm::Mu(v, body) | MuTerm::Nu(v, body) => {
                let rebuild = |v: String, b: MuTerm| match self {
                    MuTerm::Mu(..) => MuTerm::Mu(v, Box::new(b)),
                    _ => MuTerm::Nu(v, Box::new(b)),
                };
                if v == var {
                    // The binder shadows the substituted variable.
                    return self.clone();
                }
                if !body.free_vars().contains(var) {
                    return self.clone();
                }
                if replacement.free_vars().contains(v) {
                    // Rename the binder to avoid capturing a free variable
                    // of the replacement.
                    let mut avoid = replacement.free_vars();
                    avoid.extend(body.free_vars());
                    let fresh = fresh_name(v, &avoid);
                    let renamed = body.substitute(v, &MuTerm::var(fresh.clone()));
                    rebuild(fresh, renamed.substitute(var, replacement))
                } else {
                    rebuild(v.clone(), body.substitute(var, replacement))
                }
            }
        }
    }

    /// Replace a fixpoint term by one unfolding of its definition:
    /// `μZ.φ(Z)` becomes `φ(μZ.φ(Z))`, and dually for `ν`. Evaluation is
    /// invariant under this rewrite.
    pub fn unfold(&self) -> Result<MuTerm, EvalError> {
        match self {
            MuTerm::Mu(v, body) | MuTerm::Nu(v, body) => Ok(body.substitute(v, self)),
            _ => Err(EvalError::NotAFixpoint),
        }
    }
}

fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut i = 1usize;
    loop {
        let candidate = format!("{base}_{i}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

impl fmt::Display for MuTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuTerm::Var(x) => write!(f, "{x}"),
            MuTerm::Const(c) => write!(f, "<{c}>"),
            MuTerm::Mu(v, body) => write!(f, "mu {v}. {body}"),
            MuTerm::Nu(v, body) => write!(f, "nu {v}. {body}"),
            MuTerm::Op(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}
