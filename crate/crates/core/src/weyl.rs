//! The Weyl group acting on `X(T)`: closed-form order, optional BFS
//! enumeration as integer matrices, root orbits and coset counts.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;

/// Default upper bound on the number of enumerated elements.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

/// An element of `W` as an `n × n` integer matrix acting on column vectors of
/// `X(T)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    entries: Vec<i64>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        WeylElement { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        WeylElement {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        entries[i * n + j] += a * other.entries[k * n + j];
                    }
                }
            }
        }
        WeylElement { n, entries }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries[i * self.n + j] * v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.entries[i * self.n + i]).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    pub fn determinant(&self) -> i64 {
        // Bareiss fraction-free elimination
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        (sign * m[n - 1][n - 1]) as i64
    }
}

/// A W-orbit of roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Root indices, ascending.
    pub roots: Vec<usize>,
    pub component: usize,
    pub long: bool,
    /// Lowest-index positive root of the orbit.
    pub representative: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self, datum: &RootDatum) -> usize {
        self.roots.iter().filter(|&&r| datum.is_positive(r)).count()
    }
}

#[derive(Debug, Clone)]
struct Enumeration {
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
    inverse: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct WeylGroup<'a> {
    datum: &'a RootDatum,
    generators: Vec<WeylElement>,
    order: u128,
    cap: u128,
    enumeration: Option<Enumeration>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
}

impl<'a> WeylGroup<'a> {
    /// Builds `W` from the simple reflections. The full element list is kept
    /// only when `|W| ≤ cap`; elements are in BFS order from the identity with
    /// generators tried in simple-root order.
    pub fn generate(datum: &'a RootDatum, cap: u128) -> Result<Self> {
        let cap = cap.max(1);
        let n = datum.rank();
        let generators: Vec<WeylElement> = datum
            .simple_roots()
            .iter()
            .map(|&i| WeylElement::from_rows(&datum.reflection_matrix(i).expect("simple root index")))
            .collect();
        let order = datum.cartan_type().weyl_order();

        let enumeration = if order <= cap {
            Some(Self::enumerate(n, &generators, order)?)
        } else {
            None
        };
        let (orbits, orbit_of) = Self::root_orbits_bfs(datum);
        Ok(WeylGroup {
            datum,
            generators,
            order,
            cap,
            enumeration,
            orbits,
            orbit_of,
        })
    }

    fn enumerate(n: usize, generators: &[WeylElement], order: u128) -> Result<Enumeration> {
        let mut elements = vec![WeylElement::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut next = 0;
        while next < elements.len() {
            for (g, s) in generators.iter().enumerate() {
                let p = elements[next].compose(s);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                    parent.push((next, g));
                }
            }
            next += 1;
        }
        if elements.len() as u128 != order {
            return Err(Error::EnumerationMismatch {
                found: elements.len(),
                expected: order,
            });
        }
        // (e·s)⁻¹ = s·e⁻¹; parents always precede children
        let mut inverse = vec![0usize; elements.len()];
        for k in 1..elements.len() {
            let (p, g) = parent[k];
            let inv = generators[g].compose(&elements[inverse[p]]);
            inverse[k] = index[&inv];
        }
        Ok(Enumeration {
            elements,
            index,
            inverse,
        })
    }

    fn root_orbits_bfs(datum: &RootDatum) -> (Vec<Orbit>, Vec<usize>) {
        let count = datum.root_count();
        let reflections: Vec<WeylElement> = datum
            .simple_roots()
            .iter()
            .map(|&i| WeylElement::from_rows(&datum.reflection_matrix(i).unwrap()))
            .collect();
        let mut label = vec![usize::MAX; count];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..count {
            if label[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(r) = queue.pop_front() {
                for s in &reflections {
                    let image = s.apply(datum.roots()[r].as_slice());
                    let j = datum.root_index(&image).expect("reflections permute the roots");
                    if label[j] == usize::MAX {
                        label[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut orbits: Vec<Orbit> = raw
            .into_iter()
            .map(|roots| {
                let representative = roots.iter().copied().find(|&r| datum.is_positive(r)).unwrap();
                Orbit {
                    component: datum.component_of(representative),
                    long: datum.is_long(representative),
                    representative,
                    roots,
                }
            })
            .collect();
        orbits.sort_by_key(|o| (o.component, !o.long));
        let mut orbit_of = vec![0; count];
        for (k, o) in orbits.iter().enumerate() {
            for &r in &o.roots {
                orbit_of[r] = k;
            }
        }
        (orbits, orbit_of)
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn is_enumerated(&self) -> bool {
        self.enumeration.is_some()
    }

    fn enumeration(&self) -> Result<&Enumeration> {
        self.enumeration.as_ref().ok_or(Error::EnumerationUnavailable {
            order: self.order,
            cap: self.cap,
        })
    }

    pub fn elements(&self) -> Result<&[WeylElement]> {
        Ok(&self.enumeration()?.elements)
    }

    pub fn index_of(&self, w: &WeylElement) -> Result<usize> {
        self.enumeration()?.index.get(w).copied().ok_or(Error::ForeignElement)
    }

    pub fn inverse_index(&self, i: usize) -> Result<usize> {
        Ok(self.enumeration()?.inverse[i])
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        let e = self.enumeration()?;
        let p = e.elements[a].compose(&e.elements[b]);
        Ok(e.index[&p])
    }

    /// W-orbits on `R`, ordered by component and then long before short.
    pub fn root_orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_of_root(&self, root: usize) -> usize {
        self.orbit_of[root]
    }

    pub fn reflection(&self, root: usize) -> Result<WeylElement> {
        Ok(WeylElement::from_rows(&self.datum.reflection_matrix(root)?))
    }

    fn orbit(&self, j: usize) -> Result<&Orbit> {
        self.orbits.get(j).ok_or(Error::OrbitIndex {
            index: j,
            count: self.orbits.len(),
        })
    }

    /// `H_j = {1, s_{α_j}}` for the orbit representative `α_j`.
    pub fn orbit_reflection(&self, j: usize) -> Result<WeylElement> {
        self.reflection(self.orbit(j)?.representative)
    }

    /// Number of cosets `uH_j` fixed by `w`, i.e. `χ_{Ind}(w)` for the
    /// permutation representation on `W/H_j`. Direct count over `W`.
    pub fn fixed_coset_count(&self, j: usize, w: &WeylElement) -> Result<u128> {
        let s = self.orbit_reflection(j)?;
        let e = self.enumeration()?;
        if !e.index.contains_key(w) {
            return Err(Error::ForeignElement);
        }
        // u with w·u ∈ {u, u·s}; each fixed coset contributes both its elements
        let fixed = e
            .elements
            .iter()
            .filter(|u| {
                let wu = w.compose(u);
                wu == **u || wu == u.compose(&s)
            })
            .count();
        Ok(fixed as u128 / 2)
    }

    /// `χ_{Ind_{H_j}^W(1)}` on every element, by accumulating the conjugates
    /// `u h u⁻¹` over `u ∈ W`, `h ∈ H_j`.
    pub fn induced_values(&self, j: usize) -> Result<Vec<i128>> {
        let s = self.orbit_reflection(j)?;
        let e = self.enumeration()?;
        let s_idx = e.index[&s];
        let mut counts = vec![0i128; e.elements.len()];
        for (u, inv) in e.inverse.iter().enumerate() {
            counts[0] += 1;
            let conj = e.elements[u].compose(&e.elements[s_idx]).compose(&e.elements[*inv]);
            counts[e.index[&conj]] += 1;
        }
        Ok(counts.into_iter().map(|c| c / 2).collect())
    }

    /// Trace of `w` on the reflection representation `S_i` of component `i`,
    /// read off from the images of that component's simple roots.
    pub fn component_trace(&self, w: &WeylElement, i: usize) -> Result<i64> {
        let d = self.datum;
        if i >= d.component_count() {
            return Err(Error::ComponentIndex {
                index: i,
                count: d.component_count(),
            });
        }
        let mut trace = 0;
        for (local, &s) in d.simple_roots().iter().filter(|&&s| d.component_of(s) == i).enumerate() {
            let image = w.apply(&d.roots()[s]);
            let r = d.root_index(&image).ok_or(Error::ForeignElement)?;
            trace += d.simple_coords(r)[local];
        }
        Ok(trace)
    }

    /// Whether `w` maps every root to a root.
    pub fn permutes_roots(&self, w: &WeylElement) -> bool {
        self.datum.roots().iter().all(|r| self.datum.root_index(&w.apply(r)).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::LatticeSpec;

    fn datum(t: &str, lattice: LatticeSpec) -> RootDatum {
        RootDatum::new(t.parse().unwrap(), lattice).unwrap()
    }

    #[test]
    fn a1_group() {
        let d = datum("A1", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&d, 1_000_000).unwrap();
        assert_eq!(w.order(), 2);
        let els = w.elements().unwrap();
        assert!(els[0].is_identity());
        assert_eq!(els[1], WeylElement::from_rows(&[vec![-1]]));
    }

    #[test]
    fn bfs_matches_closed_form() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4", "A1+A1", "A2+B2"] {
            for lattice in [LatticeSpec::SimplyConnected, LatticeSpec::Adjoint] {
                let d = datum(t, lattice);
                let w = WeylGroup::generate(&d, 1_000_000).unwrap();
                assert_eq!(w.elements().unwrap().len() as u128, w.order(), "{t}");
            }
        }
    }

    #[test]
    fn g2_order() {
        let d = datum("G2", LatticeSpec::SimplyConnected);
        assert_eq!(WeylGroup::generate(&d, 1_000_000).unwrap().elements().unwrap().len(), 12);
    }

    #[test]
    fn e8_skips_enumeration() {
        let d = datum("E8", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&d, 1_000_000).unwrap();
        assert_eq!(w.order(), 696_729_600);
        assert!(!w.is_enumerated());
        assert!(matches!(w.elements(), Err(Error::EnumerationUnavailable { .. })));
        assert_eq!(w.root_orbits().len(), 1);
        assert_eq!(w.root_orbits()[0].len(), 240);
    }

    #[test]
    fn inverses_and_determinants() {
        let d = datum("B3", LatticeSpec::Adjoint);
        let w = WeylGroup::generate(&d, 1_000_000).unwrap();
        for i in 0..w.order() as usize {
            let inv = w.inverse_index(i).unwrap();
            assert_eq!(w.multiply(i, inv).unwrap(), 0);
            assert_eq!(w.elements().unwrap()[i].determinant().abs(), 1);
        }
    }

    #[test]
    fn elements_permute_roots() {
        for t in ["A3", "B3", "G2", "C3"] {
            let d = datum(t, LatticeSpec::Adjoint);
            let w = WeylGroup::generate(&d, 1_000_000).unwrap();
            assert!(w.elements().unwrap().iter().all(|e| w.permutes_roots(e)), "{t}");
        }
    }

    fn element_order(e: &WeylElement) -> usize {
        let mut p = e.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(e);
            k += 1;
        }
        k
    }

    #[test]
    fn coxeter_relations() {
        for t in ["A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"] {
            let d = datum(t, LatticeSpec::SimplyConnected);
            let w = WeylGroup::generate(&d, 1).unwrap();
            let c = d.cartan_matrix();
            for i in 0..c.len() {
                for j in 0..c.len() {
                    let m = if i == j {
                        1
                    } else {
                        match c[i][j] * c[j][i] {
                            0 => 2,
                            1 => 3,
                            2 => 4,
                            3 => 6,
                            x => panic!("bad product {x}"),
                        }
                    };
                    let g = w.generators();
                    assert_eq!(element_order(&g[i].compose(&g[j])), m, "{t} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn orbits() {
        let a2 = datum("A2", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&a2, 10).unwrap();
        assert_eq!(w.root_orbits().len(), 1);
        assert_eq!(w.root_orbits()[0].len(), 6);

        let b2 = datum("B2", LatticeSpec::Adjoint);
        let w = WeylGroup::generate(&b2, 10).unwrap();
        let o = w.root_orbits();
        assert_eq!(o.len(), 2);
        assert_eq!((o[0].len(), o[1].len()), (4, 4));
        assert!(o[0].long && !o[1].long);
        assert_eq!(o[0].representative, b2.simple_roots()[0]);
        assert_eq!(o[1].representative, b2.simple_roots()[1]);

        let a1a1 = datum("A1+A1", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&a1a1, 10).unwrap();
        let o = w.root_orbits();
        assert_eq!(o.len(), 2);
        assert_eq!((o[0].len(), o[1].len()), (2, 2));
        assert_eq!((o[0].component, o[1].component), (0, 1));
    }

    #[test]
    fn orbit_sizes_sum_to_root_count() {
        for t in ["G2", "F4", "B4", "C4", "D4", "E6", "A2+G2+B3"] {
            let d = datum(t, LatticeSpec::SimplyConnected);
            let w = WeylGroup::generate(&d, 1).unwrap();
            let total: usize = w.root_orbits().iter().map(Orbit::len).sum();
            assert_eq!(total, d.root_count());
            let expected: usize = d.cartan_type().components().iter().map(|c| c.orbit_count()).sum();
            assert_eq!(w.root_orbits().len(), expected, "{t}");
        }
    }

    #[test]
    fn fixed_cosets_examples() {
        let a1 = datum("A1", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&a1, 10).unwrap();
        let els = w.elements().unwrap();
        assert_eq!(w.fixed_coset_count(0, &els[0]).unwrap(), 1);
        assert_eq!(w.fixed_coset_count(0, &els[1]).unwrap(), 1);

        let a2 = datum("A2", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&a2, 10).unwrap();
        let s = w.reflection(a2.simple_roots()[0]).unwrap();
        assert_eq!(w.fixed_coset_count(0, &s).unwrap(), 1);
        assert_eq!(w.fixed_coset_count(0, &WeylElement::identity(2)).unwrap(), 3);
        assert!(w.fixed_coset_count(3, &s).is_err());
    }

    #[test]
    fn induced_values_match_coset_count() {
        for t in ["A2", "B2", "G2", "A1+A2", "B3"] {
            let d = datum(t, LatticeSpec::Adjoint);
            let w = WeylGroup::generate(&d, 10_000).unwrap();
            for j in 0..w.root_orbits().len() {
                let vals = w.induced_values(j).unwrap();
                for (k, e) in w.elements().unwrap().iter().enumerate() {
                    assert_eq!(vals[k] as u128, w.fixed_coset_count(j, e).unwrap(), "{t} orbit {j} element {k}");
                }
                assert_eq!(vals[0] as u128, w.order() / 2);
                assert_eq!(vals.iter().sum::<i128>() as u128, w.order());
            }
        }
    }

    #[test]
    fn unavailable_without_enumeration() {
        let d = datum("E7", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&d, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(!w.is_enumerated());
        assert!(w.induced_values(0).is_err());
        assert!(w.fixed_coset_count(0, &WeylElement::identity(7)).is_err());
    }

    #[test]
    fn component_traces() {
        let d = datum("A1+A2", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&d, 100).unwrap();
        let id = WeylElement::identity(3);
        assert_eq!(w.component_trace(&id, 0).unwrap(), 1);
        assert_eq!(w.component_trace(&id, 1).unwrap(), 2);
        for e in w.elements().unwrap() {
            let sum = w.component_trace(e, 0).unwrap() + w.component_trace(e, 1).unwrap();
            assert_eq!(sum, e.trace());
        }
        assert!(w.component_trace(&id, 2).is_err());
    }
}
