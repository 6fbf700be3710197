//! Residue-level walks through a tower: preimage tables of each step's left-hand
//! side and depth-first enumeration of affine points over one base value.

use crate::gf::{Elem, FiniteField};

use super::spec::{StepKind, TowerSpec};

/// Preimages of every field value under one left-hand side, in CSR layout.
#[derive(Clone, Debug)]
pub struct PreimageTable {
    offsets: Vec<u32>,
    preimages: Vec<Elem>,
}

impl PreimageTable {
    pub fn new(field: &FiniteField, lhs: impl Fn(Elem) -> Elem) -> Self {
        let size = field.size() as usize;
        let values: Vec<Elem> = field.elements().map(&lhs).collect();
        let mut offsets = vec![0u32; size + 1];
        for v in &values {
            offsets[v.index() + 1] += 1;
        }
        for i in 0..size {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut preimages = vec![Elem::ZERO; size];
        for (y, v) in field.elements().zip(&values) {
            let slot = &mut fill[v.index()];
            preimages[*slot as usize] = y;
            *slot += 1;
        }
        PreimageTable { offsets, preimages }
    }

    pub fn preimages(&self, c: Elem) -> &[Elem] {
        let i = c.index();
        &self.preimages[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

/// One table per listed step.
#[derive(Clone, Debug)]
pub struct FiberTables {
    tables: Vec<PreimageTable>,
}

impl FiberTables {
    pub fn new(spec: &TowerSpec) -> Self {
        let field = spec.field();
        let tables = spec
            .listed_steps()
            .iter()
            .map(|s| PreimageTable::new(field, |y| s.lhs_value(field, y)))
            .collect();
        FiberTables { tables }
    }

    /// Table of zero-based step `i` (the last one repeats).
    pub fn table(&self, i: usize) -> &PreimageTable {
        &self.tables[i.min(self.tables.len() - 1)]
    }
}

/// Affine points `(x_1, ..., x_j)` above `x_1 = a`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Walk {
    /// Tuples reaching the target level through unramified steps with finite values.
    pub etale: Vec<Vec<Elem>>,
    /// Partial tuples whose next right-hand side has a pole, or vanishes under a
    /// Kummer step.
    pub special: Vec<Vec<Elem>>,
}

/// Depth-first walk from `x_1 = a` up to `level`.
pub fn walk_from(spec: &TowerSpec, tables: &FiberTables, a: Elem, level: usize) -> Walk {
    let mut walk = Walk::default();
    let mut stack = vec![vec![a]];
    while let Some(t) = stack.pop() {
        let j = t.len();
        if j == level {
            walk.etale.push(t);
            continue;
        }
        let step = spec.step(j - 1);
        let x = *t.last().expect("non-empty");
        let special = match step.rhs.eval(x) {
            None => None,
            Some(w) if w.is_zero() && matches!(step.kind, StepKind::Kummer { .. }) => None,
            Some(w) => Some(w),
        };
        let Some(w) = special else {
            walk.special.push(t);
            continue;
        };
        for &y in tables.table(j - 1).preimages(w).iter().rev() {
            let mut next = t.clone();
            next.push(y);
            stack.push(next);
        }
    }
    walk.etale.sort();
    walk.special.sort();
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preimage_table_partitions_the_field() {
        let f = FiniteField::of(3, 2);
        let t = PreimageTable::new(&f, |y| f.pow(y, 4));
        let total: usize = f.elements().map(|c| t.preimages(c).len()).sum();
        assert_eq!(total, 9);
        assert_eq!(t.preimages(f.one()).len(), 4);
        assert_eq!(t.preimages(Elem::ZERO), &[Elem::ZERO]);
    }
}
