//! Class functions on the Weyl group.
//!
//! A [`ClassFunction`] carries up to two representations:
//!
//! * a [`Descriptor`], a formal integer combination of the basis characters
//!   `χ_B` (trivial), `χ_{S_i}` (reflection representation of component `i`),
//!   `χ_reg` (regular) and `χ_{Ind,j}` (induced from the trivial character of
//!   `H_j = {1, s_{α_j}}`). Inner products of descriptors go through a Gram
//!   table built from character theory, never through a sum over `W`.
//! * explicit integer values on every enumerated element, materialized from
//!   matrices and coset counts.
//!
//! The two are computed independently; agreement between them is what the
//! enumerated strategy checks.

use std::ops::{Add, Mul, Neg, Sub};
use std::ptr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rational, Rational};
use crate::spectral::CoverStats;
use crate::weyl::WeylGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descriptor {
    pub trivial: i128,
    pub reflection: Vec<i128>,
    pub regular: i128,
    pub induced: Vec<i128>,
}

impl Descriptor {
    pub fn zero(components: usize, orbits: usize) -> Self {
        Descriptor {
            trivial: 0,
            reflection: vec![0; components],
            regular: 0,
            induced: vec![0; orbits],
        }
    }

    fn coefficients(&self) -> Vec<i128> {
        let mut v = vec![self.trivial];
        v.extend(&self.reflection);
        v.push(self.regular);
        v.extend(&self.induced);
        v
    }

    fn zip_with(&self, other: &Descriptor, f: impl Fn(i128, i128) -> i128) -> Descriptor {
        Descriptor {
            trivial: f(self.trivial, other.trivial),
            reflection: self.reflection.iter().zip(&other.reflection).map(|(&a, &b)| f(a, b)).collect(),
            regular: f(self.regular, other.regular),
            induced: self.induced.iter().zip(&other.induced).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn scale(&self, k: i128) -> Descriptor {
        self.zip_with(self, |a, _| a * k)
    }
}

/// Which route an inner product takes.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Gram table on descriptors.
    Analytic,
    /// `(1/|W|) Σ_w f(w) h(w)` over the enumerated group.
    Enumerated,
    /// Analytic when both sides have descriptors, otherwise enumerated.
    Auto,
}

#[derive(Debug, Clone)]
pub struct ClassFunction<'g> {
    group: &'g WeylGroup<'g>,
    descriptor: Option<Descriptor>,
    values: Option<Vec<i128>>,
    virtual_character: bool,
}

impl<'g> ClassFunction<'g> {
    fn basis(group: &'g WeylGroup<'g>, descriptor: Descriptor, values: Option<Vec<i128>>) -> Self {
        ClassFunction {
            group,
            descriptor: Some(descriptor),
            values,
            virtual_character: true,
        }
    }

    /// A class function given only by explicit values. It is not assumed to
    /// be a virtual character.
    pub fn from_values(group: &'g WeylGroup<'g>, values: Vec<i128>) -> Result<Self> {
        let n = group.elements()?.len();
        if values.len() != n {
            return Err(Error::Inconsistent(format!("{} values for a group of order {}", values.len(), n)));
        }
        Ok(ClassFunction {
            group,
            descriptor: None,
            values: Some(values),
            virtual_character: false,
        })
    }

    pub fn group(&self) -> &'g WeylGroup<'g> {
        self.group
    }

    pub fn descriptor(&self) -> Option<&Descriptor> {
        self.descriptor.as_ref()
    }

    pub fn values(&self) -> Option<&[i128]> {
        self.values.as_deref()
    }

    pub fn is_virtual_character(&self) -> bool {
        self.virtual_character
    }

    /// Value at the identity, available on either representation.
    pub fn at_identity(&self) -> i128 {
        if let Some(v) = &self.values {
            return v[0];
        }
        let d = self.descriptor.as_ref().expect("class function has a representation");
        let g = self.group;
        let datum = g.datum();
        let order = g.order() as i128;
        d.trivial
            + d.reflection.iter().enumerate().map(|(i, &c)| c * datum.component_rank(i) as i128).sum::<i128>()
            + d.regular * order
            + d.induced.iter().map(|&c| c * order / 2).sum::<i128>()
    }

    /// Explicit values of the descriptor, computed from the explicit basis
    /// characters.
    pub fn materialize(&self) -> Result<Vec<i128>> {
        if let Some(v) = &self.values {
            return Ok(v.clone());
        }
        let d = self.descriptor.as_ref().ok_or(Error::StrategyUnavailable)?;
        let g = self.group;
        let n = g.elements()?.len();
        let mut out = vec![d.trivial; n];
        for (i, &c) in d.reflection.iter().enumerate() {
            if c != 0 {
                for (o, v) in out.iter_mut().zip(component_values(g, i)?) {
                    *o += c * v;
                }
            }
        }
        out[0] += d.regular * n as i128;
        for (j, &c) in d.induced.iter().enumerate() {
            if c != 0 {
                for (o, v) in out.iter_mut().zip(g.induced_values(j)?) {
                    *o += c * v;
                }
            }
        }
        Ok(out)
    }

    /// Spot check that explicit values are constant on conjugacy classes:
    /// `f(s w s) = f(w)` for every generator `s`.
    pub fn is_class_function(&self) -> Result<bool> {
        let Some(values) = &self.values else {
            return Ok(true);
        };
        let g = self.group;
        let gens: Vec<usize> = g.generators().iter().map(|s| g.index_of(s)).collect::<Result<_>>()?;
        for (w, &v) in values.iter().enumerate() {
            for &s in &gens {
                let c = g.multiply(g.multiply(s, w)?, s)?;
                if values[c] != v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn combine(&self, other: &Self, f: impl Fn(i128, i128) -> i128 + Copy) -> Self {
        assert!(ptr::eq(self.group, other.group), "class functions on different groups");
        let descriptor = match (&self.descriptor, &other.descriptor) {
            (Some(a), Some(b)) => Some(a.zip_with(b, f)),
            _ => None,
        };
        let values = match (&self.values, &other.values) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()),
            _ => None,
        };
        ClassFunction {
            group: self.group,
            descriptor,
            values,
            virtual_character: self.virtual_character && other.virtual_character,
        }
    }

    fn scaled(&self, k: i128) -> Self {
        ClassFunction {
            group: self.group,
            descriptor: self.descriptor.as_ref().map(|d| d.scale(k)),
            values: self.values.as_ref().map(|v| v.iter().map(|x| x * k).collect()),
            virtual_character: self.virtual_character,
        }
    }
}

impl<'g> Add for &ClassFunction<'g> {
    type Output = ClassFunction<'g>;
    fn add(self, rhs: Self) -> ClassFunction<'g> {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<'g> Sub for &ClassFunction<'g> {
    type Output = ClassFunction<'g>;
    fn sub(self, rhs: Self) -> ClassFunction<'g> {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<'g> Mul<i128> for &ClassFunction<'g> {
    type Output = ClassFunction<'g>;
    fn mul(self, k: i128) -> ClassFunction<'g> {
        self.scaled(k)
    }
}

impl<'g> Neg for &ClassFunction<'g> {
    type Output = ClassFunction<'g>;
    fn neg(self) -> ClassFunction<'g> {
        self.scaled(-1)
    }
}

fn shape(group: &WeylGroup<'_>) -> (usize, usize) {
    (group.datum().component_count(), group.root_orbits().len())
}

fn component_values(group: &WeylGroup<'_>, i: usize) -> Result<Vec<i128>> {
    group
        .elements()?
        .iter()
        .map(|w| group.component_trace(w, i).map(i128::from))
        .collect()
}

/// `χ_B ≡ 1`.
pub fn trivial<'g>(group: &'g WeylGroup<'g>) -> ClassFunction<'g> {
    let (c, o) = shape(group);
    let mut d = Descriptor::zero(c, o);
    d.trivial = 1;
    let values = group.elements().ok().map(|e| vec![1; e.len()]);
    ClassFunction::basis(group, d, values)
}

/// `χ_{S_i}`, the reflection representation of component `i`.
pub fn reflection_component<'g>(group: &'g WeylGroup<'g>, i: usize) -> Result<ClassFunction<'g>> {
    let (c, o) = shape(group);
    if i >= c {
        return Err(Error::ComponentIndex { index: i, count: c });
    }
    let mut d = Descriptor::zero(c, o);
    d.reflection[i] = 1;
    let values = if group.is_enumerated() {
        Some(component_values(group, i)?)
    } else {
        None
    };
    Ok(ClassFunction::basis(group, d, values))
}

/// `χ_reg`: `|W|` at the identity, 0 elsewhere.
pub fn regular<'g>(group: &'g WeylGroup<'g>) -> ClassFunction<'g> {
    let (c, o) = shape(group);
    let mut d = Descriptor::zero(c, o);
    d.regular = 1;
    let values = group.elements().ok().map(|e| {
        let mut v = vec![0; e.len()];
        v[0] = e.len() as i128;
        v
    });
    ClassFunction::basis(group, d, values)
}

/// `χ_{Ind_{H_j}^W(B_j)}`.
pub fn induced<'g>(group: &'g WeylGroup<'g>, j: usize) -> Result<ClassFunction<'g>> {
    let (c, o) = shape(group);
    if j >= o {
        return Err(Error::OrbitIndex { index: j, count: o });
    }
    let mut d = Descriptor::zero(c, o);
    d.induced[j] = 1;
    let values = if group.is_enumerated() {
        Some(group.induced_values(j)?)
    } else {
        None
    };
    Ok(ClassFunction::basis(group, d, values))
}

/// `χ_S` for `S = X(T) ⊗ ℂ`. Explicit values are matrix traces; the
/// descriptor is `h·χ_B + Σ χ_{S_i}`.
pub fn reflection_character<'g>(group: &'g WeylGroup<'g>) -> ClassFunction<'g> {
    let (c, o) = shape(group);
    let mut d = Descriptor::zero(c, o);
    d.trivial = group.datum().central_rank() as i128;
    d.reflection = vec![1; c];
    let values = group.elements().ok().map(|e| e.iter().map(|w| w.trace() as i128).collect());
    ClassFunction::basis(group, d, values)
}

fn check_cover(group: &WeylGroup<'_>, cover: &CoverStats) -> Result<()> {
    let sizes: Vec<usize> = group.root_orbits().iter().map(|o| o.len()).collect();
    if cover.weyl_order() != group.order() as i128 || cover.orbit_sizes() != sizes.as_slice() {
        return Err(Error::CoverMismatch);
    }
    Ok(())
}

/// Lefschetz character of `W` on the spectral curve, from the chain-level
/// decomposition: `(2 − 2g − |Ram|)·χ_reg + Σ_j n_j χ_{Ind,j}`.
pub fn lefschetz_character<'g>(group: &'g WeylGroup<'g>, cover: &CoverStats) -> Result<ClassFunction<'g>> {
    check_cover(group, cover)?;
    let euler_off_branch = 2 - 2 * cover.genus() as i128 - cover.ram_count();
    let mut acc = &regular(group) * euler_off_branch;
    for (j, &nj) in cover.n().iter().enumerate() {
        acc = &acc + &(&induced(group, j)? * nj);
    }
    Ok(acc)
}

/// `χ_{H¹} = 2χ_B − χ_L`.
pub fn h1_character<'g>(group: &'g WeylGroup<'g>, cover: &CoverStats) -> Result<ClassFunction<'g>> {
    let lef = lefschetz_character(group, cover)?;
    Ok(&(&trivial(group) * 2) - &lef)
}

/// `⟨χ_{B_j}, res_j χ_{S_i}⟩_{H_j}`: `s_{α_j}` fixes a hyperplane of `S_i` when
/// `R_j` lies in component `i` and acts trivially otherwise.
pub fn restriction_inner_product(group: &WeylGroup<'_>, i: usize, j: usize) -> Result<i128> {
    let (c, o) = shape(group);
    if i >= c {
        return Err(Error::ComponentIndex { index: i, count: c });
    }
    let orbit = group.root_orbits().get(j).ok_or(Error::OrbitIndex { index: j, count: o })?;
    let dim = group.datum().component_rank(i) as i128;
    Ok(if orbit.component == i { dim - 1 } else { dim })
}

/// Same quantity as [`restriction_inner_product`], averaged over `H_j` from
/// actual traces: `(χ_{S_i}(1) + χ_{S_i}(s_{α_j}))/2`.
pub fn restriction_inner_product_by_trace(group: &WeylGroup<'_>, i: usize, j: usize) -> Result<i128> {
    let s = group.orbit_reflection(j)?;
    let id = crate::weyl::WeylElement::identity(group.datum().rank());
    let sum = group.component_trace(&id, i)? + group.component_trace(&s, i)?;
    Ok(sum as i128 / 2)
}

/// Gram matrix of the basis `[χ_B, χ_{S_0..}, χ_reg, χ_{Ind,0..}]`.
///
/// Entries follow from character theory: the `S_i` are irreducible and
/// non-trivial, `χ_reg` contains each irreducible `dim` times, Frobenius
/// reciprocity for the induced characters, and `χ_{Ind,j}` vanishes off the
/// identity and the reflections of orbit `j`, where it equals `|W|/|R_j|`.
pub fn basis_gram(group: &WeylGroup<'_>) -> Result<Vec<Vec<Rational>>> {
    let (c, o) = shape(group);
    let datum = group.datum();
    let order = group.order() as i128;
    let size = c + o + 2;
    let reg = c + 1;
    let ind = |j: usize| c + 2 + j;
    let mut g = vec![vec![Rational::zero(); size]; size];
    let mut set = |a: usize, b: usize, v: Rational| {
        g[a][b] = v;
        g[b][a] = v;
    };
    set(0, 0, rational(1));
    set(0, reg, rational(1));
    set(reg, reg, rational(order));
    for i in 0..c {
        set(1 + i, 1 + i, rational(1));
        set(1 + i, reg, rational(datum.component_rank(i) as i128));
        for j in 0..o {
            set(1 + i, ind(j), rational(restriction_inner_product(group, i, j)?));
        }
    }
    for (j, oj) in group.root_orbits().iter().enumerate() {
        set(0, ind(j), rational(1));
        set(reg, ind(j), Rational::new(order, 2));
        for k in 0..o {
            let mut v = Rational::new(order, 4);
            if j == k {
                v += Rational::new(order, 2 * oj.len() as i128);
            }
            set(ind(j), ind(k), v);
        }
    }
    Ok(g)
}

fn analytic(f: &ClassFunction<'_>, h: &ClassFunction<'_>) -> Result<Rational> {
    let (Some(a), Some(b)) = (&f.descriptor, &h.descriptor) else {
        return Err(Error::StrategyUnavailable);
    };
    let gram = basis_gram(f.group)?;
    let (a, b) = (a.coefficients(), b.coefficients());
    let mut acc = Rational::zero();
    for (x, row) in a.iter().zip(&gram) {
        if *x == 0 {
            continue;
        }
        for (y, gv) in b.iter().zip(row) {
            acc += rational(x * y) * gv;
        }
    }
    Ok(acc)
}

fn enumerated(f: &ClassFunction<'_>, h: &ClassFunction<'_>) -> Result<Rational> {
    let a = f.values.as_ref().ok_or(Error::StrategyUnavailable)?;
    let b = h.values.as_ref().ok_or(Error::StrategyUnavailable)?;
    let sum: i128 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    Ok(Rational::new(sum, a.len() as i128))
}

/// `⟨f, h⟩ = (1/|W|) Σ_w f(w) h(w)` (all values are real integers).
pub fn inner_product_with(f: &ClassFunction<'_>, h: &ClassFunction<'_>, strategy: Strategy) -> Result<Rational> {
    if !ptr::eq(f.group, h.group) {
        return Err(Error::GroupMismatch);
    }
    let value = match strategy {
        Strategy::Analytic => analytic(f, h)?,
        Strategy::Enumerated => enumerated(f, h)?,
        Strategy::Auto => match analytic(f, h) {
            Ok(v) => v,
            Err(Error::StrategyUnavailable) => enumerated(f, h)?,
            Err(e) => return Err(e),
        },
    };
    if f.virtual_character && h.virtual_character && !value.is_integer() {
        return Err(Error::NonIntegralInnerProduct(value.to_string()));
    }
    Ok(value)
}

pub fn inner_product(f: &ClassFunction<'_>, h: &ClassFunction<'_>) -> Result<Rational> {
    inner_product_with(f, h, Strategy::Auto)
}

/// Inner product of two virtual characters as an integer.
pub fn inner_product_int(f: &ClassFunction<'_>, h: &ClassFunction<'_>, strategy: Strategy) -> Result<i128> {
    let v = inner_product_with(f, h, strategy)?;
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonIntegralInnerProduct(v.to_string()))
    }
}
