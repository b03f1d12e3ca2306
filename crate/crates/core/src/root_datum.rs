//! Root data of split connected reductive groups as integer lattice objects.
//!
//! `X(T)` and `Y(T)` are both `ℤⁿ` with the standard pairing
//! `⟨λ, y⟩ = Σ λ_i y_i`. The isogeny type is encoded entirely by the
//! coordinates in which roots and coroots are written.
//!
//! Internally every lattice is described inside an ambient space whose basis
//! is the fundamental weights of each simple component followed by
//! `central_rank` characters of the central torus. A [`LatticeSpec`] is a
//! basis of `X(T)` written in those ambient coordinates.

use std::collections::{HashMap, VecDeque};
use std::ops::Range;

use num_traits::{One, Zero};

use crate::cartan::{CartanType, SimpleType};
use crate::error::{Error, Result};
use crate::linalg::{self, rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    /// `X(T)` is the weight lattice (plus central characters).
    SimplyConnected,
    /// `X(T)` is the root lattice (plus central characters).
    Adjoint,
    /// Rows generate `X(T)` in ambient (fundamental weight ⊕ central)
    /// coordinates. Entries are kept rational so that a basis leaving the
    /// weight lattice can be reported instead of silently truncated.
    Custom(Vec<Vec<Rational>>),
}

impl LatticeSpec {
    pub fn custom_integer(rows: &[Vec<i64>]) -> Self {
        LatticeSpec::Custom(linalg::to_rational(rows))
    }

    pub fn name(&self) -> &'static str {
        match self {
            LatticeSpec::SimplyConnected => "sc",
            LatticeSpec::Adjoint => "adjoint",
            LatticeSpec::Custom(_) => "custom",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan_type: CartanType,
    lattice: LatticeSpec,
    rank: usize,
    /// Roots in the `X(T)` basis. Index `i + |R⁺|` holds `-roots[i]`.
    roots: Vec<Vec<i64>>,
    /// Coroots in the `Y(T)` basis, same indexing as `roots`.
    coroots: Vec<Vec<i64>>,
    /// Coefficients of each root in the simple roots of its own component.
    simple_coords: Vec<Vec<i64>>,
    component: Vec<usize>,
    norm: Vec<Rational>,
    long: Vec<bool>,
    positive: usize,
    simple: Vec<usize>,
    form: Vec<Vec<Rational>>,
    index: HashMap<Vec<i64>, usize>,
}

/// Roots of one simple component in simple-root coordinates, sorted by
/// height and then lexicographically (descending), so the simple roots come
/// first in Bourbaki order.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let unit = |i: usize| (0..l).map(|k| (k == i) as i64).collect::<Vec<_>>();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: VecDeque<Vec<i64>> = (0..l).map(unit).collect();
    for r in &queue {
        seen.insert(r.clone(), ());
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..l {
            let pairing: i64 = (0..l).map(|k| beta[k] * cartan[k][i]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if !seen.contains_key(&image) {
                seen.insert(image.clone(), ());
                queue.push_back(image);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_keys().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    pos
}

/// `(α_i, α_i)/2` for each simple root, scaled so long roots get 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Rational> {
    let l = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; l];
    d[0] = Some(Rational::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..l {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                // C_ij d_j = C_ji d_i
                let di = d[i].unwrap();
                d[j] = Some(di * rational(cartan[j][i] as i128) / rational(cartan[i][j] as i128));
                stack.push(j);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
    let max = *d.iter().max().unwrap();
    d.into_iter().map(|x| x / max).collect()
}

struct ComponentData {
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<Rational>>,
    sym: Vec<Rational>,
    positive: Vec<Vec<i64>>,
}

impl ComponentData {
    fn new(simple_type: SimpleType) -> Self {
        let cartan = simple_type.cartan_matrix();
        let sym = symmetrizer(&cartan);
        let l = cartan.len();
        let gram = (0..l)
            .map(|i| (0..l).map(|j| rational(cartan[i][j] as i128) * sym[j]).collect())
            .collect();
        let positive = positive_roots(&cartan);
        ComponentData {
            cartan,
            gram,
            sym,
            positive,
        }
    }

    fn norm(&self, beta: &[i64]) -> Rational {
        let l = beta.len();
        let mut acc = Rational::zero();
        for i in 0..l {
            for j in 0..l {
                acc += self.gram[i][j] * rational((beta[i] * beta[j]) as i128);
            }
        }
        acc
    }

    /// Coordinates of `β∨` in the simple coroots: `c_i = β_i (α_i,α_i)/(β,β)`.
    fn coroot(&self, beta: &[i64]) -> Vec<i64> {
        let n = self.norm(beta);
        beta.iter()
            .zip(&self.sym)
            .map(|(&b, &d)| {
                let c = rational(b as i128) * d * rational(2) / n;
                debug_assert!(c.is_integer());
                c.to_integer() as i64
            })
            .collect()
    }

    /// Coordinates of `β` in the fundamental weights.
    fn weight_coords(&self, beta: &[i64]) -> Vec<i64> {
        let l = beta.len();
        (0..l).map(|i| (0..l).map(|k| beta[k] * self.cartan[k][i]).sum()).collect()
    }
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, lattice: LatticeSpec) -> Result<Self> {
        let comps: Vec<ComponentData> =
            cartan_type.components().iter().copied().map(ComponentData::new).collect();
        let n = cartan_type.rank();

        let mut offsets = Vec::with_capacity(comps.len());
        let mut off = 0;
        for c in &comps {
            offsets.push(off);
            off += c.cartan.len();
        }

        let basis: Vec<Vec<Rational>> = match &lattice {
            LatticeSpec::SimplyConnected => linalg::identity(n),
            LatticeSpec::Adjoint => {
                let mut b = linalg::identity(n);
                for (c, &o) in comps.iter().zip(&offsets) {
                    for (i, row) in c.cartan.iter().enumerate() {
                        for (j, &x) in row.iter().enumerate() {
                            b[o + i][o + j] = rational(x as i128);
                        }
                    }
                }
                b
            }
            LatticeSpec::Custom(rows) => {
                let cols = rows.first().map_or(0, Vec::len);
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::LatticeShape {
                        expected: n,
                        rows: rows.len(),
                        cols,
                    });
                }
                for (i, row) in rows.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        if !x.is_integer() {
                            return Err(Error::NotInWeightLattice {
                                row: i,
                                col: j,
                                value: x.to_string(),
                            });
                        }
                    }
                }
                rows.clone()
            }
        };
        let basis_inv = linalg::inverse(&basis).ok_or(Error::LatticeSingular)?;

        // positive roots of every component, then their negatives
        let mut pos_ambient = Vec::new();
        let mut pos_coroot_ambient = Vec::new();
        let mut simple_coords = Vec::new();
        let mut component = Vec::new();
        let mut norm = Vec::new();
        let mut long = Vec::new();
        let mut simple = Vec::new();
        for (k, (c, &o)) in comps.iter().zip(&offsets).enumerate() {
            let max_norm = c.positive.iter().map(|b| c.norm(b)).max().unwrap();
            for beta in &c.positive {
                if beta.iter().sum::<i64>() == 1 {
                    simple.push(simple_coords.len());
                }
                let mut a = vec![0i64; n];
                let mut y = vec![0i64; n];
                for (i, (w, cr)) in c.weight_coords(beta).into_iter().zip(c.coroot(beta)).enumerate() {
                    a[o + i] = w;
                    y[o + i] = cr;
                }
                pos_ambient.push(a);
                pos_coroot_ambient.push(y);
                let nb = c.norm(beta);
                long.push(nb == max_norm);
                norm.push(nb);
                simple_coords.push(beta.clone());
                component.push(k);
            }
        }
        let positive = pos_ambient.len();

        let mut roots = Vec::with_capacity(2 * positive);
        for (idx, a) in pos_ambient.iter().enumerate() {
            let ar: Vec<Rational> = a.iter().map(|&x| rational(x as i128)).collect();
            let x = linalg::to_integral(&linalg::row_times(&ar, &basis_inv))
                .ok_or(Error::RootLatticeNotContained { root: idx })?;
            roots.push(x);
        }
        let mut coroots = Vec::with_capacity(2 * positive);
        for c in &pos_coroot_ambient {
            let cr: Vec<Rational> = c.iter().map(|&x| rational(x as i128)).collect();
            let y = linalg::to_integral(&linalg::times_col(&basis, &cr))
                .expect("integral basis pairs integrally with coroots");
            coroots.push(y);
        }
        let neg = |v: &Vec<i64>| v.iter().map(|x| -x).collect::<Vec<_>>();
        for i in 0..positive {
            roots.push(neg(&roots[i]));
            coroots.push(neg(&coroots[i]));
            simple_coords.push(neg(&simple_coords[i]));
            component.push(component[i]);
            norm.push(norm[i]);
            long.push(long[i]);
        }

        // W-invariant form: per component (ω_i, ω_j) = (C⁻¹ G C⁻ᵀ)_ij, identity on
        // the central characters; transported to the X(T) basis.
        let mut ambient_form = linalg::identity(n);
        for (c, &o) in comps.iter().zip(&offsets) {
            let cinv = linalg::inverse(&linalg::to_rational(&c.cartan)).expect("Cartan matrix is invertible");
            let block = linalg::mat_mul(&linalg::mat_mul(&cinv, &c.gram), &linalg::transpose(&cinv));
            for (i, row) in block.into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    ambient_form[o + i][o + j] = x;
                }
            }
        }
        let form = linalg::mat_mul(&linalg::mat_mul(&basis, &ambient_form), &linalg::transpose(&basis));

        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(RootDatum {
            cartan_type,
            lattice,
            rank: n,
            roots,
            coroots,
            simple_coords,
            component,
            norm,
            long,
            positive,
            simple,
            form,
            index,
        })
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    /// `dim T`, the rank of `X(T)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `h = dim Z(G)`.
    pub fn central_rank(&self) -> usize {
        self.cartan_type.central_rank()
    }

    pub fn dim_g(&self) -> usize {
        self.rank + self.roots.len()
    }

    pub fn component_count(&self) -> usize {
        self.cartan_type.components().len()
    }

    pub fn component_rank(&self, i: usize) -> usize {
        self.cartan_type.components()[i].rank()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn positive_roots(&self) -> Range<usize> {
        0..self.positive
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.positive
    }

    pub fn negative_of(&self, root: usize) -> usize {
        if root < self.positive {
            root + self.positive
        } else {
            root - self.positive
        }
    }

    /// Indices of the simple roots, component by component in Bourbaki order.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn root(&self, i: usize) -> Result<&[i64]> {
        self.check_root(i)?;
        Ok(&self.roots[i])
    }

    /// The coroot stored at construction (simple-coroot coordinates pushed
    /// through the lattice basis).
    pub fn coroot_vector(&self, i: usize) -> Result<&[i64]> {
        self.check_root(i)?;
        Ok(&self.coroots[i])
    }

    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.long[i]
    }

    pub fn root_norm(&self, i: usize) -> Rational {
        self.norm[i]
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Gram matrix of the W-invariant form on `X(T) ⊗ ℚ`.
    pub fn symmetric_form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    pub fn pair(lambda: &[i64], y: &[i64]) -> i64 {
        lambda.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    fn check_root(&self, i: usize) -> Result<()> {
        if i < self.roots.len() {
            Ok(())
        } else {
            Err(Error::RootIndex {
                index: i,
                count: self.roots.len(),
            })
        }
    }

    /// The one-parameter subgroup `β′` with `β′(λ) = 2(λ,β)/(β,β)`, evaluated
    /// on the basis of `X(T)` through the invariant form.
    pub fn coroot(&self, i: usize) -> Result<Vec<i64>> {
        self.check_root(i)?;
        let beta: Vec<Rational> = self.roots[i].iter().map(|&x| rational(x as i128)).collect();
        let f_beta = linalg::times_col(&self.form, &beta);
        let bb = beta.iter().zip(&f_beta).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
        let values: Vec<Rational> = f_beta.iter().map(|x| rational(2) * x / bb).collect();
        linalg::to_integral(&values).ok_or(Error::NonIntegralCoroot(i))
    }

    /// Matrix of `s_β : λ ↦ λ − ⟨λ,β∨⟩β` acting on column vectors.
    pub fn reflection_matrix(&self, i: usize) -> Result<Vec<Vec<i64>>> {
        self.check_root(i)?;
        let (r, c) = (&self.roots[i], &self.coroots[i]);
        Ok((0..self.rank)
            .map(|a| (0..self.rank).map(|b| (a == b) as i64 - r[a] * c[b]).collect())
            .collect())
    }

    /// `⟨α_i, α_j∨⟩` over the simple roots, block by component.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| Self::pair(&self.roots[i], &self.coroots[j])).collect())
            .collect()
    }

    /// Invariant factors > 1 of `ℤR∨` inside its saturation in `Y(T)`,
    /// i.e. the fundamental group of the derived group `(G,G)`.
    pub fn derived_fundamental_group(&self) -> Vec<i64> {
        let rows: Vec<Vec<i64>> = self.coroots[..self.positive].to_vec();
        if rows.is_empty() {
            return Vec::new();
        }
        linalg::smith_invariants(&rows).into_iter().filter(|&d| d > 1).collect()
    }

    pub fn derived_group_is_simply_connected(&self) -> bool {
        self.derived_fundamental_group().is_empty()
    }

    /// Whether some `λ ∈ X(T)` has `⟨λ, α∨⟩ = 1`. The image of `⟨·, α∨⟩` is
    /// `gcd(α∨)·ℤ`, so this is a gcd test.
    pub fn root_admits_unit_pairing(&self, i: usize) -> Result<bool> {
        self.check_root(i)?;
        Ok(linalg::gcd_all(self.coroots[i].iter().copied()) == 1)
    }

    /// Checks the structural invariants of a root datum.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Inconsistent(m));
        if self.roots.len() != 2 * self.positive {
            return fail("root count is not 2|R⁺|".into());
        }
        for i in 0..self.positive {
            let neg: Vec<i64> = self.roots[i].iter().map(|x| -x).collect();
            if self.roots[i + self.positive] != neg {
                return fail(format!("root {} is not paired with its negative", i));
            }
            if self.simple_coords[i].iter().any(|&c| c < 0) {
                return fail(format!("positive root {} has a negative simple coefficient", i));
            }
        }
        for i in 0..self.roots.len() {
            if Self::pair(&self.roots[i], &self.coroots[i]) != 2 {
                return fail(format!("⟨α, α∨⟩ ≠ 2 for root {}", i));
            }
        }
        let mut expected = Vec::new();
        for t in self.cartan_type.components() {
            let c = t.cartan_matrix();
            let base = expected.len();
            for row in c {
                let mut full = vec![0; self.simple.len()];
                full[base..base + row.len()].copy_from_slice(&row);
                expected.push(full);
            }
        }
        if self.cartan_matrix() != expected {
            return fail("Cartan integers do not match the declared type".into());
        }
        let span = linalg::rank(&linalg::to_rational(&self.roots));
        if span != self.rank - self.central_rank() {
            return fail(format!("roots span rank {} instead of {}", span, self.rank - self.central_rank()));
        }
        if self.dim_g() != self.rank + self.roots.len() {
            return fail("dim G ≠ rank + |R|".into());
        }
        Ok(())
    }
}
