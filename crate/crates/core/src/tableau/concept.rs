//! Hash-consed concepts in negation normal form.
//!
//! Every interned concept has its NNF complement interned alongside it, so the
//! expansion rules can look up `¬C` without mutating the pool.

use std::collections::HashMap;

use crate::model::ClassExpression;

pub(crate) type CId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Nnf {
    Top,
    Bottom,
    Name(String),
    NotName(String),
    And(Vec<CId>),
    Or(Vec<CId>),
    /// `≥n r.C` with `n ≥ 1`; `∃r.C` is `≥1 r.C`.
    AtLeast(u32, String, CId),
    /// `≤n r.C` with `n ≥ 1`; `≤0 r.C` is stored as `∀r.¬C`.
    AtMost(u32, String, CId),
    Forall(String, CId),
}

#[derive(Debug, Clone, Default)]
pub(crate) struct ConceptPool {
    nodes: Vec<Nnf>,
    index: HashMap<Nnf, CId>,
    negs: Vec<CId>,
}

impl ConceptPool {
    pub fn new() -> Self {
        let mut pool = ConceptPool::default();
        pool.top();
        pool
    }

    pub fn get(&self, id: CId) -> &Nnf {
        &self.nodes[id as usize]
    }

    pub fn neg(&self, id: CId) -> CId {
        self.negs[id as usize]
    }

    pub fn lookup(&self, n: &Nnf) -> Option<CId> {
        self.index.get(n).copied()
    }

    pub fn top(&mut self) -> CId {
        self.mk(Nnf::Top)
    }

    pub fn bottom(&mut self) -> CId {
        self.mk(Nnf::Bottom)
    }

    pub fn name(&mut self, n: &str) -> CId {
        self.mk(Nnf::Name(n.to_string()))
    }

    pub fn and(&mut self, parts: Vec<CId>) -> CId {
        let mut flat = Vec::new();
        for p in parts {
            match self.get(p) {
                Nnf::Top => {}
                Nnf::Bottom => return self.bottom(),
                Nnf::And(inner) => flat.extend(inner.iter().copied()),
                _ => flat.push(p),
            }
        }
        flat.sort_unstable();
        flat.dedup();
        if flat.iter().any(|&p| flat.binary_search(&self.neg(p)).is_ok()) {
            return self.bottom();
        }
        match flat.len() {
            0 => self.top(),
            1 => flat[0],
            _ => self.mk(Nnf::And(flat)),
        }
    }

    pub fn or(&mut self, parts: Vec<CId>) -> CId {
        let mut flat = Vec::new();
        for p in parts {
            match self.get(p) {
                Nnf::Bottom => {}
                Nnf::Top => return self.top(),
                Nnf::Or(inner) => flat.extend(inner.iter().copied()),
                _ => flat.push(p),
            }
        }
        flat.sort_unstable();
        flat.dedup();
        if flat.iter().any(|&p| flat.binary_search(&self.neg(p)).is_ok()) {
            return self.top();
        }
        match flat.len() {
            0 => self.bottom(),
            1 => flat[0],
            _ => self.mk(Nnf::Or(flat)),
        }
    }

    pub fn at_least(&mut self, n: u32, role: &str, filler: CId) -> CId {
        if n == 0 {
            return self.top();
        }
        if matches!(self.get(filler), Nnf::Bottom) {
            return self.bottom();
        }
        self.mk(Nnf::AtLeast(n, role.to_string(), filler))
    }

    pub fn at_most(&mut self, n: u32, role: &str, filler: CId) -> CId {
        if n == 0 {
            let neg = self.neg(filler);
            return self.forall(role, neg);
        }
        if matches!(self.get(filler), Nnf::Bottom) {
            return self.top();
        }
        self.mk(Nnf::AtMost(n, role.to_string(), filler))
    }

    pub fn forall(&mut self, role: &str, filler: CId) -> CId {
        if matches!(self.get(filler), Nnf::Top) {
            return self.top();
        }
        self.mk(Nnf::Forall(role.to_string(), filler))
    }

    /// Interns the NNF of `expr`.
    pub fn intern(&mut self, expr: &ClassExpression) -> CId {
        use ClassExpression as C;
        match expr {
            C::Top => self.top(),
            C::Bottom => self.bottom(),
            C::Named(n) => self.name(n),
            C::Neg(inner) => {
                let id = self.intern(inner);
                self.neg(id)
            }
            C::And(cs) => {
                let ids = cs.iter().map(|c| self.intern(c)).collect();
                self.and(ids)
            }
            C::Or(cs) => {
                let ids = cs.iter().map(|c| self.intern(c)).collect();
                self.or(ids)
            }
            C::Exists(r, c) => {
                let f = self.intern(c);
                self.at_least(1, r, f)
            }
            C::Forall(r, c) => {
                let f = self.intern(c);
                self.forall(r, f)
            }
            C::AtLeast(n, r, c) => {
                let f = self.intern(c);
                self.at_least(*n, r, f)
            }
            C::AtMost(n, r, c) => {
                let f = self.intern(c);
                self.at_most(*n, r, f)
            }
        }
    }

    fn mk(&mut self, n: Nnf) -> CId {
        if let Some(id) = self.index.get(&n) {
            return *id;
        }
        let id = self.nodes.len() as CId;
        self.nodes.push(n.clone());
        self.negs.push(id);
        self.index.insert(n.clone(), id);
        let neg = match n {
            Nnf::Top => self.mk(Nnf::Bottom),
            Nnf::Bottom => self.mk(Nnf::Top),
            Nnf::Name(a) => self.mk(Nnf::NotName(a)),
            Nnf::NotName(a) => self.mk(Nnf::Name(a)),
            Nnf::And(cs) => {
                let negs = cs.iter().map(|c| self.neg(*c)).collect();
                self.or(negs)
            }
            Nnf::Or(cs) => {
                let negs = cs.iter().map(|c| self.neg(*c)).collect();
                self.and(negs)
            }
            Nnf::AtLeast(n, r, c) => self.at_most(n - 1, &r, c),
            Nnf::AtMost(n, r, c) => self.at_least(n + 1, &r, c),
            Nnf::Forall(r, c) => {
                let nc = self.neg(c);
                self.at_least(1, &r, nc)
            }
        };
        self.negs[id as usize] = neg;
        self.negs[neg as usize] = id;
        id
    }
}
