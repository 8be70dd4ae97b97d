//! Fibers `C_m`, their gcd-graphs `∇_m`, and pure/mixed classification.
//!
//! A fiber is enumerated by depth-first search over all but a few "pivot"
//! generators. The pivots are a maximal set of generators with linearly
//! independent free parts; once the others are fixed the pivots are solved
//! for exactly, and the torsion coordinates are checked at the leaf.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use petgraph::unionfind::UnionFind;

use crate::exactlin::IntMatrix;
use crate::semigroup::{GroupElement, Semigroup, Side, SplitSpec};

/// An exponent vector `α ∈ N^l`, i.e. the monomial `X^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization(pub Vec<u64>);

impl Factorization {
    pub fn zero(len: usize) -> Self {
        Factorization(vec![0; len])
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, _)| i)
    }

    /// Whether the two monomials share a variable (nontrivial gcd).
    pub fn meets(&self, other: &Factorization) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a > 0 && b > 0)
    }

    pub fn supported_in(&self, indices: &[usize]) -> bool {
        self.support().all(|i| indices.binary_search(&i).is_ok())
    }
}

/// All factorizations of one degree, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub degree: GroupElement,
    pub members: Vec<Factorization>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The 1-skeleton of `∇_m` with its connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NablaComplex {
    pub fiber: Fiber,
    /// Pairs `(i, j)`, `i < j`, of member indices with a common variable.
    pub edges: Vec<(usize, usize)>,
    /// Member indices per component; each sorted, ordered by first element.
    pub components: Vec<Vec<usize>>,
}

impl NablaComplex {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn component_of(&self, member: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.binary_search(&member).is_ok())
            .expect("every member lies in a component")
    }
}

struct Search<'a> {
    s: &'a Semigroup,
    target: &'a GroupElement,
    /// Generators fixed by the search, largest weight first.
    free_vars: Vec<usize>,
    pivots: Vec<usize>,
    pivot_rows: Vec<usize>,
    adjugate: IntMatrix,
    det: BigInt,
}

fn adjugate(b: &IntMatrix) -> IntMatrix {
    let n = b.rows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj.set(0, 0, BigInt::from(1));
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = IntMatrix::from_rows(
                cols.len(),
                rows.iter()
                    .map(|&r| cols.iter().map(|&c| b.get(r, c).clone()).collect::<Vec<_>>()),
            )
            .expect("square minor");
            let m = minor.determinant().expect("square minor");
            adj.set(i, j, if (i + j) % 2 == 0 { m } else { -m });
        }
    }
    adj
}

impl<'a> Search<'a> {
    fn new(s: &'a Semigroup, indices: &[usize], target: &'a GroupElement) -> Self {
        let k = s.group().free_rank();
        let weights = s.weights();
        let mut order: Vec<usize> = indices.to_vec();
        order.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
        // pivots: greedily independent free parts, smallest weight first
        let mut pivots: Vec<usize> = Vec::new();
        for &i in &order {
            let mut trial = pivots.clone();
            trial.push(i);
            let m = IntMatrix::from_rows(k, trial.iter().map(|&j| s.generators()[j].free().to_vec()))
                .expect("free parts have rank width");
            if m.rank() == trial.len() {
                pivots = trial;
            }
            if pivots.len() == k {
                break;
            }
        }
        let r = pivots.len();
        // columns are the pivot free parts; pick r independent rows
        let full = IntMatrix::from_rows(
            r,
            (0..k).map(|row| {
                pivots
                    .iter()
                    .map(|&j| s.generators()[j].free()[row].clone())
                    .collect::<Vec<_>>()
            }),
        )
        .expect("pivot block");
        let mut pivot_rows: Vec<usize> = Vec::new();
        for row in 0..k {
            let mut trial = pivot_rows.clone();
            trial.push(row);
            let m = IntMatrix::from_rows(r, trial.iter().map(|&i| full.row(i).to_vec())).expect("row subset");
            if m.rank() == trial.len() {
                pivot_rows = trial;
            }
            if pivot_rows.len() == r {
                break;
            }
        }
        let block =
            IntMatrix::from_rows(r, pivot_rows.iter().map(|&i| full.row(i).to_vec())).expect("square pivot block");
        let det = block.determinant().expect("square pivot block");
        let adjugate = adjugate(&block);
        let mut free_vars: Vec<usize> = order.into_iter().filter(|i| !pivots.contains(i)).collect();
        free_vars.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
        Search {
            s,
            target,
            free_vars,
            pivots,
            pivot_rows,
            adjugate,
            det,
        }
    }

    /// Visits every factorization; the visitor returns `false` to stop.
    fn run(&self, visit: &mut dyn FnMut(Factorization) -> bool) {
        let w = self.s.weight_of(self.target);
        if w.is_negative() {
            return;
        }
        let mut alpha = vec![0u64; self.s.len()];
        let rest = self.target.free().to_vec();
        self.descend(0, rest, w, &mut alpha, visit);
    }

    fn descend(
        &self,
        level: usize,
        rest: Vec<BigInt>,
        rest_weight: BigInt,
        alpha: &mut Vec<u64>,
        visit: &mut dyn FnMut(Factorization) -> bool,
    ) -> bool {
        if level == self.free_vars.len() {
            return self.leaf(&rest, alpha, visit);
        }
        let j = self.free_vars[level];
        let wj = &self.s.weights()[j];
        let bound = (&rest_weight / wj).to_u64().expect("exponent bound fits in u64");
        let gen = self.s.generators()[j].free();
        let mut rest = rest;
        let mut rest_weight = rest_weight;
        for a in 0..=bound {
            alpha[j] = a;
            if !self.descend(level + 1, rest.clone(), rest_weight.clone(), alpha, visit) {
                alpha[j] = 0;
                return false;
            }
            for (x, g) in rest.iter_mut().zip(gen) {
                *x -= g;
            }
            rest_weight -= wj;
        }
        alpha[j] = 0;
        true
    }

    fn leaf(&self, rest: &[BigInt], alpha: &mut [u64], visit: &mut dyn FnMut(Factorization) -> bool) -> bool {
        let rhs: Vec<BigInt> = self.pivot_rows.iter().map(|&i| rest[i].clone()).collect();
        let scaled = self.adjugate.apply(&rhs).expect("adjugate is square");
        let mut ok = true;
        for (&p, x) in self.pivots.iter().zip(&scaled) {
            let (q, r) = x.div_rem(&self.det);
            if !r.is_zero() || q.is_negative() {
                ok = false;
                break;
            }
            alpha[p] = q.to_u64().expect("exponent fits in u64");
        }
        let mut keep_going = true;
        if ok && self.s.degree(alpha).as_ref() == Ok(self.target) {
            keep_going = visit(Factorization(alpha.to_vec()));
        }
        for &p in &self.pivots {
            alpha[p] = 0;
        }
        keep_going
    }
}

/// All factorizations of `m` using only the generators in `indices`
/// (sorted ascending).
pub fn enumerate_fiber_over(s: &Semigroup, indices: &[usize], m: &GroupElement) -> Vec<Factorization> {
    let mut out = Vec::new();
    if indices.is_empty() {
        if m.is_zero() {
            out.push(Factorization::zero(s.len()));
        }
        return out;
    }
    Search::new(s, indices, m).run(&mut |f| {
        out.push(f);
        true
    });
    out.sort();
    out
}

pub fn find_factorization(s: &Semigroup, indices: &[usize], m: &GroupElement) -> Option<Factorization> {
    if indices.is_empty() {
        return m.is_zero().then(|| Factorization::zero(s.len()));
    }
    let mut found = None;
    Search::new(s, indices, m).run(&mut |f| {
        found = Some(f);
        false
    });
    found
}

/// The fiber `C_m`; empty iff `m` is not in the semigroup.
pub fn enumerate_fiber(s: &Semigroup, m: &GroupElement) -> Fiber {
    Fiber {
        degree: m.clone(),
        members: enumerate_fiber_over(s, &s.all_indices(), m),
    }
}

pub fn build_nabla(fiber: Fiber) -> NablaComplex {
    let n = fiber.members.len();
    let mut edges = Vec::new();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if fiber.members[i].meets(&fiber.members[j]) {
                edges.push((i, j));
                uf.union(i, j);
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let root = uf.find(i);
        match root_slot[root] {
            Some(c) => components[c].push(i),
            None => {
                root_slot[root] = Some(components.len());
                components.push(vec![i]);
            }
        }
    }
    NablaComplex {
        fiber,
        edges,
        components,
    }
}

/// Pure-left, pure-right and mixed members (the zero factorization counts
/// as pure-left).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitFiber {
    pub pure_left: Vec<Factorization>,
    pub pure_right: Vec<Factorization>,
    pub mixed: Vec<Factorization>,
}

pub fn split_fiber(fiber: &Fiber, split: &SplitSpec) -> SplitFiber {
    let mut out = SplitFiber::default();
    for f in &fiber.members {
        if f.supported_in(split.left()) {
            out.pure_left.push(f.clone());
        } else if f.supported_in(split.right()) {
            out.pure_right.push(f.clone());
        } else {
            out.mixed.push(f.clone());
        }
    }
    out
}

/// `∇_m` restricted to the pure monomials of one side.
pub fn nabla_restricted(fiber: &Fiber, split: &SplitSpec, side: Side) -> NablaComplex {
    let parts = split_fiber(fiber, split);
    let members = match side {
        Side::Left => parts.pure_left,
        Side::Right => parts.pure_right,
    };
    build_nabla(Fiber {
        degree: fiber.degree.clone(),
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{four_six_nine, thoma, three_five_seven};

    fn f(v: &[u64]) -> Factorization {
        Factorization(v.to_vec())
    }

    fn pt(s: &Semigroup, v: &[i64]) -> GroupElement {
        s.group().free_element(v).unwrap()
    }

    #[test]
    fn zero_fiber() {
        let s = thoma();
        let fib = enumerate_fiber(&s, &pt(&s, &[0, 0]));
        assert_eq!(fib.members, vec![Factorization::zero(8)]);
    }

    #[test]
    fn thoma_13_13() {
        let s = thoma();
        let fib = enumerate_fiber(&s, &pt(&s, &[13, 13]));
        // x1x4, y1y4, y2y3
        assert_eq!(
            fib.members,
            vec![
                f(&[0, 0, 0, 0, 0, 1, 1, 0]),
                f(&[0, 0, 0, 0, 1, 0, 0, 1]),
                f(&[1, 0, 0, 1, 0, 0, 0, 0]),
            ]
        );
        let nabla = build_nabla(fib);
        assert_eq!(nabla.component_count(), 3);
        assert!(nabla.edges.is_empty());
    }

    #[test]
    fn thoma_18_18() {
        let s = thoma();
        let fib = enumerate_fiber(&s, &pt(&s, &[18, 18]));
        // y1³y2, y2³, y1y3², y4²
        assert_eq!(
            fib.members,
            vec![
                f(&[0, 0, 0, 0, 0, 0, 0, 2]),
                f(&[0, 0, 0, 0, 0, 3, 0, 0]),
                f(&[0, 0, 0, 0, 1, 0, 2, 0]),
                f(&[0, 0, 0, 0, 3, 1, 0, 0]),
            ]
        );
    }

    #[test]
    fn small_numerical_complexes() {
        let s = four_six_nine();
        let nabla = build_nabla(enumerate_fiber(&s, &pt(&s, &[12])));
        assert_eq!(nabla.fiber.members, vec![f(&[0, 2, 0]), f(&[3, 0, 0])]);
        assert_eq!(nabla.component_count(), 2);

        let s = three_five_seven();
        let nabla = build_nabla(enumerate_fiber(&s, &pt(&s, &[15])));
        assert_eq!(nabla.fiber.len(), 3);
        assert_eq!(nabla.component_count(), 1);
    }

    #[test]
    fn non_member_has_empty_fiber() {
        let s = Semigroup::numerical(&[4, 6]).unwrap();
        assert!(enumerate_fiber(&s, &pt(&s, &[5])).is_empty());
        assert!(enumerate_fiber(&s, &pt(&s, &[-2])).is_empty());
    }

    #[test]
    fn splits_of_thoma_fibers() {
        let s = thoma();
        let split = SplitSpec::prefix(8, 4).unwrap();
        let parts = split_fiber(&enumerate_fiber(&s, &pt(&s, &[13, 13])), &split);
        assert_eq!(parts.pure_left, vec![f(&[1, 0, 0, 1, 0, 0, 0, 0])]);
        assert_eq!(parts.pure_right.len(), 2);
        assert!(parts.mixed.is_empty());

        let fib = enumerate_fiber(&s, &pt(&s, &[15, 24]));
        assert_eq!(fib.len(), 4);
        let parts = split_fiber(&fib, &split);
        assert_eq!(
            parts.mixed,
            vec![f(&[0, 0, 1, 0, 0, 1, 1, 0]), f(&[0, 0, 1, 0, 1, 0, 0, 1])]
        );
    }

    #[test]
    fn restricted_complexes() {
        let s = thoma();
        let split = SplitSpec::prefix(8, 4).unwrap();
        let left = nabla_restricted(&enumerate_fiber(&s, &pt(&s, &[13, 13])), &split, Side::Left);
        assert_eq!(left.fiber.len(), 1);
        assert!(left.is_connected());
        let right = nabla_restricted(&enumerate_fiber(&s, &pt(&s, &[12, 12])), &split, Side::Right);
        assert_eq!(right.component_count(), 2);
        let empty = nabla_restricted(&enumerate_fiber(&s, &pt(&s, &[12, 12])), &split, Side::Left);
        assert_eq!(empty.component_count(), 0);
    }

    #[test]
    fn torsion_fiber_members_have_the_degree() {
        use crate::exactlin::to_bigints;
        use crate::semigroup::AbelianGroup;
        let g = AbelianGroup::new(1, to_bigints(&[2])).unwrap();
        let gens = vec![
            g.element(to_bigints(&[1]), to_bigints(&[1])).unwrap(),
            g.element(to_bigints(&[1]), to_bigints(&[0])).unwrap(),
        ];
        let s = Semigroup::new(g.clone(), gens).unwrap();
        let m = g.element(to_bigints(&[4]), to_bigints(&[0])).unwrap();
        let fib = enumerate_fiber(&s, &m);
        assert_eq!(fib.members, vec![f(&[0, 4]), f(&[2, 2]), f(&[4, 0])]);
    }
}
