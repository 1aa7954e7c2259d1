//! Brute-force enumeration for definite quaternion orders over `Z`: right
//! ideal classes by `ℓ`-neighbors, unit groups and normalizers by short
//! vectors, types by isometry of norm forms. Nothing here uses a mass
//! formula, so the results can check the formulas.

pub mod qform;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{factor_integer, is_prime_u64, Rational};
use crate::field::Place;
use crate::par::{self, Strategy};
use crate::quaternion::{ideal_sqrt, Lattice, Quat, QuaternionAlgebra};
use crate::ring::{Frac, FracField, Integers};
use qform::Gram;

type Alg = QuaternionAlgebra<Integers>;

fn to_rational(f: &Frac<BigInt>) -> Rational {
    Rational::new(f.num.clone(), f.den.clone())
}

fn check_definite(alg: &Alg) -> Result<()> {
    if alg.hilbert_symbol(&Place::Infinity)? != -1 {
        return Err(Error::NotDefinite(format!("{} is split at infinity", alg.display())));
    }
    Ok(())
}

/// Gram matrix of `(x, y) ↦ trd(x ȳ)/scale` on the basis of `l`, so a vector
/// has value `2·nrd(x)/scale`. Fails unless the result is integral.
pub fn norm_gram(alg: &Alg, l: &Lattice<BigInt>, scale: &Frac<BigInt>) -> Result<Gram> {
    let r = &alg.ring;
    let b = alg.basis(l);
    let mut g = vec![vec![BigInt::zero(); 4]; 4];
    for s in 0..4 {
        for t in s..4 {
            let v = r.f_div(&alg.trd(&alg.mul(&b[s], &alg.conj(&b[t]))), scale)?;
            if !r.f_is_integral(&v) {
                return Err(Error::Domain("the scaled norm form is not integral".into()));
            }
            g[s][t] = v.num.clone();
            g[t][s] = v.num;
        }
    }
    Ok(g)
}

/// Reduced norm of a right `O`-ideal, from `[O : I] = N(I)^2`.
pub fn ideal_norm(alg: &Alg, order: &Lattice<BigInt>, ideal: &Lattice<BigInt>) -> Result<Frac<BigInt>> {
    ideal_sqrt(&Integers, &alg.chi(order, ideal)?)
}

/// `|O^×|`, counting `±1`.
pub fn unit_count(alg: &Alg, order: &Lattice<BigInt>) -> Result<usize> {
    check_definite(alg)?;
    let g = norm_gram(alg, order, &Integers.f_one())?;
    let (_, red) = qform::lll(&g)?;
    let two = BigInt::from(2);
    Ok(qform::short_vectors(&red, &two)?.into_iter().filter(|(_, v)| *v == two).count())
}

/// One right ideal class, with the data used to tell classes apart.
#[derive(Clone, Debug)]
pub struct IdealClass {
    pub ideal: Lattice<BigInt>,
    pub norm: Frac<BigInt>,
    pub left_order: Lattice<BigInt>,
    /// `|O_L(I)^×|`, counting `±1`.
    pub units: usize,
    /// Numbers of vectors of normalized norm `1, 2, …` in `I`, up to a
    /// length that grows with the discriminant.
    pub theta: Vec<usize>,
}

impl IdealClass {
    pub fn new(alg: &Alg, order: &Lattice<BigInt>, ideal: Lattice<BigInt>, theta_len: u32) -> Result<Self> {
        let norm = ideal_norm(alg, order, &ideal)?;
        let left_order = alg.left_order(&ideal)?;
        let units = unit_count(alg, &left_order)?;
        let (_, red) = qform::lll(&norm_gram(alg, &ideal, &norm)?)?;
        let theta = qform::theta(&red, theta_len)?;
        Ok(IdealClass { ideal, norm, left_order, units, theta })
    }

    /// `1/[O_L(I)^× : Z^×]`.
    pub fn weight(&self) -> Rational {
        Rational::new(BigInt::from(2), BigInt::from(self.units))
    }

    fn key(&self) -> (usize, &[usize]) {
        (self.units, &self.theta)
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            norm: Integers.f_display(&self.norm),
            unit_index: self.units / 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub norm: String,
    pub unit_index: usize,
}

/// `J ≅ I` as right modules iff `{x : xI ⊆ J}` holds an element of reduced
/// norm `N(J)/N(I)`.
pub fn ideals_isomorphic(alg: &Alg, i: &IdealClass, j: &IdealClass) -> Result<bool> {
    let c = alg.colon_left(&i.ideal, &j.ideal)?;
    let s = Integers.f_div(&j.norm, &i.norm)?;
    let (_, red) = qform::lll(&norm_gram(alg, &c, &s)?)?;
    let two = BigInt::from(2);
    Ok(qform::short_vectors(&red, &two)?.iter().any(|(_, v)| *v == two))
}

fn projective_points(ell: u64, dim: u32) -> impl Iterator<Item = Vec<u64>> {
    let total = ell.pow(dim);
    (1..total).filter_map(move |mut idx| {
        let mut v = vec![0u64; dim as usize];
        for c in v.iter_mut() {
            *c = idx % ell;
            idx /= ell;
        }
        (v.iter().find(|&&c| c != 0) == Some(&1)).then_some(v)
    })
}

/// The `ℓ + 1` right ideals `J ⊂ I` with `I/J` simple of order `ℓ^2`, for a
/// prime `ℓ` not dividing the discriminant.
pub fn neighbors(alg: &Alg, order: &Lattice<BigInt>, class: &IdealClass, ell: u64) -> Result<Vec<Lattice<BigInt>>> {
    let r = &alg.ring;
    let g = norm_gram(alg, &class.ideal, &class.norm)?;
    let basis = alg.basis(&class.ideal);
    let ob = alg.basis(order);
    let l = r.f_int(BigInt::from(ell));
    let ell_i: Vec<Quat<BigInt>> = basis.iter().map(|e| alg.scale(e, &l)).collect();
    let index = r.f_int(BigInt::from(ell * ell));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in projective_points(ell, 4) {
        let x: Vec<BigInt> = c.iter().map(|&k| BigInt::from(k)).collect();
        // value is 2·nrd(x)/N(I)
        let half: BigInt = qform::value(&g, &x) / 2;
        if !half.is_multiple_of(&BigInt::from(ell)) {
            continue;
        }
        let mut xq = alg.zero();
        for (k, e) in x.iter().zip(&basis) {
            xq = alg.add(&xq, &alg.scale(e, &r.f_int(k.clone())));
        }
        let mut gens: Vec<Quat<BigInt>> = ob.iter().map(|o| alg.mul(&xq, o)).collect();
        gens.extend(ell_i.iter().cloned());
        let j = alg.lattice(&gens)?;
        if alg.chi(&class.ideal, &j)? != index {
            continue;
        }
        if seen.insert(j.clone()) {
            out.push(j);
        }
    }
    if out.len() as u64 != ell + 1 {
        return Err(Error::Mismatch(format!("found {} neighbors at {ell}, expected {}", out.len(), ell + 1)));
    }
    Ok(out)
}

/// When the neighbor search stops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stop {
    /// Walk the whole neighbor graph.
    Exhaust,
    /// Stop once the class weights reach this mass; an overshoot or an
    /// exhausted graph short of it is a mismatch.
    AtMass(Rational),
}

#[derive(Clone, Debug)]
pub struct BfsOptions {
    pub neighbor_prime: Option<u64>,
    pub stop: Stop,
    pub max_classes: usize,
    pub strategy: Strategy,
}

impl Default for BfsOptions {
    fn default() -> Self {
        BfsOptions {
            neighbor_prime: None,
            stop: Stop::Exhaust,
            max_classes: 5000,
            strategy: Strategy::default_for_build(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    pub classes: Vec<IdealClass>,
    /// `Σ 1/[O_L(I)^× : Z^×]`.
    pub mass: Rational,
    pub neighbor_prime: u64,
}

/// Smallest prime not dividing `n`.
pub fn smallest_coprime_prime(n: &BigInt) -> u64 {
    (2u64..).find(|&p| is_prime_u64(p) && !n.is_multiple_of(&BigInt::from(p))).expect("infinitely many primes")
}

/// Right ideal classes of `order`, found by breadth-first search over
/// `ℓ`-neighbors starting from `order` itself.
pub fn right_ideal_classes(alg: &Alg, order: &Lattice<BigInt>, opts: &BfsOptions) -> Result<ClassEnumeration> {
    check_definite(alg)?;
    let check = alg.verify_order(order);
    if !check.is_order {
        return Err(Error::Domain(format!("not an order: {}", check.witness.unwrap_or_default())));
    }
    let disc = alg.reduced_disc(order)?.num;
    let ell = match opts.neighbor_prime {
        Some(p) if !is_prime_u64(p) => return Err(Error::Domain(format!("neighbor prime {p} is not prime"))),
        Some(p) if disc.is_multiple_of(&BigInt::from(p)) => {
            return Err(Error::Domain(format!("neighbor prime {p} divides the discriminant {disc}")))
        }
        Some(p) => p,
        None => smallest_coprime_prime(&disc),
    };
    // minima of normalized ideal forms sit near sqrt(disc); theta up to twice
    // that separates most classes before any isomorphism test
    let theta_len = (2 * disc.sqrt().to_u32().unwrap_or(40)).clamp(3, 80);
    let root = IdealClass::new(alg, order, order.clone(), theta_len)?;
    let mut mass = root.weight();
    let mut classes = vec![root];
    let mut frontier = vec![0usize];
    let reached = |m: &Rational| matches!(&opts.stop, Stop::AtMass(t) if m == t);
    'walk: while !frontier.is_empty() && !reached(&mass) {
        let parents: Vec<&IdealClass> = frontier.iter().map(|&i| &classes[i]).collect();
        let found = par::map_with(opts.strategy, parents, |c| -> Result<Vec<IdealClass>> {
            neighbors(alg, order, c, ell)?.into_iter().map(|j| IdealClass::new(alg, order, j, theta_len)).collect()
        });
        let mut next = Vec::new();
        for cand in found.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten() {
            if reached(&mass) {
                break 'walk;
            }
            let mut known = false;
            for c in classes.iter().filter(|c| c.key() == cand.key()) {
                if ideals_isomorphic(alg, c, &cand)? {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            mass = mass + cand.weight();
            classes.push(cand);
            next.push(classes.len() - 1);
            if classes.len() > opts.max_classes {
                return Err(Error::BoundExceeded(format!("more than {} ideal classes", opts.max_classes)));
            }
            if let Stop::AtMass(t) = &opts.stop {
                if &mass > t {
                    return Err(Error::Mismatch(format!("enumerated mass {mass} exceeds the expected {t}")));
                }
            }
        }
        frontier = next;
    }
    if let Stop::AtMass(t) = &opts.stop {
        if &mass != t {
            return Err(Error::Mismatch(format!("neighbor graph exhausted at mass {mass}, expected {t}")));
        }
    }
    Ok(ClassEnumeration { classes, mass, neighbor_prime: ell })
}

pub fn mass_by_enumeration(alg: &Alg, order: &Lattice<BigInt>, opts: &BfsOptions) -> Result<Rational> {
    Ok(right_ideal_classes(alg, order, opts)?.mass)
}

fn primitive_key(c: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = c.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if g.is_zero() {
        return None;
    }
    let mut v: Vec<BigInt> = c.iter().map(|x| x / &g).collect();
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    Some(v)
}

/// `[N(O) : Q^×]`. Every class of the normalizer modulo `Q^×` has a
/// primitive representative in `O`; those with reduced norm dividing
/// `∏ p^min(2, v_p(disc))` are enumerated, and the search fails if they are
/// not closed under multiplication.
pub fn normalizer_index(alg: &Alg, order: &Lattice<BigInt>) -> Result<usize> {
    check_definite(alg)?;
    let r = &alg.ring;
    let disc = alg.reduced_disc(order)?.num;
    let mut bound = BigInt::one();
    for (&p, &e) in &factor_integer(&disc)?.exponents {
        bound *= num_traits::pow(BigInt::from(p), e.min(2).max(0) as usize);
    }
    let g = norm_gram(alg, order, &r.f_one())?;
    let (u, red) = qform::lll(&g)?;
    let basis = alg.basis(order);
    let mut found: HashSet<Vec<BigInt>> = HashSet::new();
    for (y, v) in qform::short_vectors(&red, &(&bound * 2))? {
        let n: BigInt = &v / 2;
        if !bound.is_multiple_of(&n) {
            continue;
        }
        let coords: Vec<BigInt> = (0..4).map(|c| (0..4).map(|k| &y[k] * &u[k][c]).sum()).collect();
        let Some(key) = primitive_key(&coords) else { continue };
        if key != coords && key.iter().map(|x| -x).collect::<Vec<_>>() != coords {
            continue;
        }
        let x = combine(alg, &basis, &coords);
        let xinv = alg.inv(&x)?;
        if basis.iter().all(|b| alg.contains(order, &alg.mul(&alg.mul(&x, b), &xinv))) {
            found.insert(key);
        }
    }
    // closure under products, modulo Q^×
    let elems: Vec<Quat<BigInt>> = found.iter().map(|c| combine(alg, &basis, c)).collect();
    for a in &elems {
        for b in &elems {
            let coords: Vec<BigInt> = alg
                .coords(order, &alg.mul(a, b))
                .into_iter()
                .map(|f| f.num)
                .collect();
            let key = primitive_key(&coords).expect("nonzero product");
            if !found.contains(&key) {
                return Err(Error::BoundExceeded(
                    "the normalizer has elements beyond the reduced-norm search bound".into(),
                ));
            }
        }
    }
    Ok(found.len())
}

fn combine(alg: &Alg, basis: &[Quat<BigInt>], c: &[BigInt]) -> Quat<BigInt> {
    let mut x = alg.zero();
    for (k, e) in c.iter().zip(basis) {
        x = alg.add(&x, &alg.scale(e, &Integers.f_int(k.clone())));
    }
    x
}

/// One conjugacy class of orders in the genus.
#[derive(Clone, Debug)]
pub struct OrderType {
    pub order: Lattice<BigInt>,
    pub units: usize,
    pub normalizer_index: usize,
    /// Indices into the class list whose left orders have this type.
    pub classes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TypeEnumeration {
    pub types: Vec<OrderType>,
    /// `Σ 1/[N(O_i) : Q^×]`.
    pub type_mass: Rational,
}

/// Groups left orders by conjugacy. Two orders are conjugate exactly when
/// their norm forms are isometric: an isometry carries `1` to a unit `u`,
/// and isometries of `(B, nrd)` are `x ↦ a x b` or `x ↦ a x̄ b`, so the image
/// is `a O a^{-1} u` (using `Ō = O`).
pub fn types_by_enumeration(alg: &Alg, classes: &ClassEnumeration, strategy: Strategy) -> Result<TypeEnumeration> {
    let one = Integers.f_one();
    let mut reps: Vec<(OrderType, Gram, Vec<usize>)> = Vec::new();
    for (idx, c) in classes.classes.iter().enumerate() {
        let g = norm_gram(alg, &c.left_order, &one)?;
        let (_, red) = qform::lll(&g)?;
        let th = qform::theta(&red, 3)?;
        let mut hit = None;
        for (k, (t, rg, rth)) in reps.iter().enumerate() {
            if t.units == c.units && *rth == th && qform::isometric(rg, &red)? {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => reps[k].0.classes.push(idx),
            None => reps.push((
                OrderType { order: c.left_order.clone(), units: c.units, normalizer_index: 0, classes: vec![idx] },
                red,
                th,
            )),
        }
    }
    let orders: Vec<Lattice<BigInt>> = reps.iter().map(|r| r.0.order.clone()).collect();
    let idx = par::map_with(strategy, orders, |o| normalizer_index(alg, &o));
    let mut types = Vec::with_capacity(reps.len());
    let mut type_mass = Rational::zero();
    for ((mut t, _, _), n) in reps.into_iter().zip(idx) {
        t.normalizer_index = n?;
        type_mass = type_mass + Rational::new(BigInt::one(), BigInt::from(t.normalizer_index));
        types.push(t);
    }
    Ok(TypeEnumeration { types, type_mass })
}

/// The enumerated mass as a rational with the class count, for reports.
pub fn describe(e: &ClassEnumeration) -> String {
    let idx: Vec<String> = e.classes.iter().map(|c| (c.units / 2).to_string()).collect();
    format!(
        "{} classes via {}-neighbors, unit indices [{}], mass {}",
        e.classes.len(),
        e.neighbor_prime,
        idx.join(", "),
        e.mass
    )
}

/// Converts an integer-valued rational, used for class norms in reports.
pub fn norm_as_u64(c: &IdealClass) -> Option<u64> {
    to_rational(&c.norm).is_integer().then(|| c.norm.num.to_u64()).flatten()
}
