//! The powerset lattice of a finite universe `{0, .., n-1}`, with a
//! runtime registry of operators and constants. This is the workhorse for
//! engine-level tests and for randomized monotone operator tables.

use std::collections::{BTreeSet, HashMap};

use super::eval::{GuardKind, Lattice, OperatorInfo};

pub type FinSet = BTreeSet<usize>;

type OpFn = Box<dyn Fn(&[FinSet]) -> FinSet + Send + Sync>;

pub struct PowersetLattice {
    universe: usize,
    ops: HashMap<String, (OperatorInfo, OpFn)>,
    consts: HashMap<String, FinSet>,
}

impl PowersetLattice {
    pub fn new(universe: usize) -> Self {
        PowersetLattice { universe, ops: HashMap::new(), consts: HashMap::new() }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn full(&self) -> FinSet {
        (0..self.universe).collect()
    }

    pub fn register_const(&mut self, name: impl Into<String>, value: FinSet) {
        self.consts.insert(name.into(), value);
    }

    pub fn register_op(
        &mut self,
        name: impl Into<String>,
        arity: usize,
        func: impl Fn(&[FinSet]) -> FinSet + Send + Sync + 'static,
    ) {
        self.ops.insert(name.into(), (OperatorInfo::plain(arity), Box::new(func)));
    }

    pub fn register_op_with_info(
        &mut self,
        name: impl Into<String>,
        info: OperatorInfo,
        func: impl Fn(&[FinSet]) -> FinSet + Send + Sync + 'static,
    ) {
        self.ops.insert(name.into(), (info, Box::new(func)));
    }

    /// Convenience for registering a unary closure-like operator that
    /// guards its argument.
    pub fn register_guard_op(
        &mut self,
        name: impl Into<String>,
        guard: GuardKind,
        func: impl Fn(&[FinSet]) -> FinSet + Send + Sync + 'static,
    ) {
        self.ops
            .insert(name.into(), (OperatorInfo::guarded(vec![guard]), Box::new(func)));
    }
}

impl Lattice for PowersetLattice {
    type Elem = FinSet;

    fn bottom(&self) -> FinSet {
        FinSet::new()
    }

    fn top(&self) -> FinSet {
        self.full()
    }

    fn join(&self, a: &FinSet, b: &FinSet) -> FinSet {
        a.union(b).copied().collect()
    }

    fn meet(&self, a: &FinSet, b: &FinSet) -> FinSet {
        a.intersection(b).copied().collect()
    }

    fn equal(&self, a: &FinSet, b: &FinSet) -> bool {
        a == b
    }

    fn constant(&self, name: &str) -> Option<FinSet> {
        self.consts.get(name).cloned()
    }

    fn operator_info(&self, name: &str) -> Option<OperatorInfo> {
        self.ops.get(name).map(|(info, _)| info.clone())
    }

    fn apply(&self, name: &str, args: &[FinSet]) -> FinSet {
        (self.ops[name].1)(args)
    }

    fn element_size(&self, e: &FinSet) -> usize {
        e.len()
    }
}
