//! Functions between finite ball spaces.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{is_chain, FiniteBallSpace, Nest};
use crate::pointset::{canonicalize_family, PointSet};

/// Preimage of `target` under `table`.
#[inline]
pub fn preimage(table: &[usize], target: PointSet) -> PointSet {
    let mut out = PointSet::EMPTY;
    for (x, &y) in table.iter().enumerate() {
        if target.contains(y) {
            out = out.with(x);
        }
    }
    out
}

/// Image of `source` under `table`.
#[inline]
pub fn image(table: &[usize], source: PointSet) -> PointSet {
    source.iter().fold(PointSet::EMPTY, |acc, x| acc.with(table[x]))
}

/// First codomain ball whose preimage is not a domain ball.
pub fn continuity_witness(domain_balls: &[PointSet], codomain_balls: &[PointSet], table: &[usize]) -> Option<PointSet> {
    codomain_balls
        .iter()
        .copied()
        .find(|b| !domain_balls.contains(&preimage(table, *b)))
}

/// First domain ball whose image is not a codomain ball.
pub fn closedness_witness(domain_balls: &[PointSet], codomain_balls: &[PointSet], table: &[usize]) -> Option<PointSet> {
    domain_balls
        .iter()
        .copied()
        .find(|b| !codomain_balls.contains(&image(table, *b)))
}

/// A total function from one finite ball space to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallMap {
    domain: Arc<FiniteBallSpace>,
    codomain: Arc<FiniteBallSpace>,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct MapRepr {
    pub domain: FiniteBallSpace,
    pub codomain: FiniteBallSpace,
    pub table: Vec<usize>,
}

fn check_table(n: usize, m: usize, table: &[usize]) -> Result<()> {
    if table.len() != n {
        return Err(Error::TableLength {
            expected: n,
            found: table.len(),
        });
    }
    if let Some((point, &value)) = table.iter().enumerate().find(|(_, &y)| y >= m) {
        return Err(Error::TableOutOfRange { point, value, size: m });
    }
    Ok(())
}

impl BallMap {
    pub fn new(domain: Arc<FiniteBallSpace>, codomain: Arc<FiniteBallSpace>, table: Vec<usize>) -> Result<BallMap> {
        check_table(domain.universe_size(), codomain.universe_size(), &table)?;
        Ok(BallMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(space: Arc<FiniteBallSpace>) -> BallMap {
        let table = (0..space.universe_size()).collect();
        BallMap {
            domain: space.clone(),
            codomain: space,
            table,
        }
    }

    pub fn from_repr(repr: MapRepr) -> Result<BallMap> {
        BallMap::new(Arc::new(repr.domain), Arc::new(repr.codomain), repr.table)
    }

    pub fn to_repr(&self) -> MapRepr {
        MapRepr {
            domain: (*self.domain).clone(),
            codomain: (*self.codomain).clone(),
            table: self.table.clone(),
        }
    }

    pub fn domain(&self) -> &Arc<FiniteBallSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteBallSpace> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `ψ_f`, the preimage of a subset of the codomain.
    pub fn preimage(&self, set: PointSet) -> PointSet {
        preimage(&self.table, set)
    }

    /// `φ_f`, the image of a subset of the domain.
    pub fn image(&self, set: PointSet) -> PointSet {
        image(&self.table, set)
    }

    /// Codomain ball with a non-ball preimage, if any. An empty preimage is
    /// never a ball.
    pub fn continuity_witness(&self) -> Option<PointSet> {
        continuity_witness(self.domain.balls(), self.codomain.balls(), &self.table)
    }

    pub fn closedness_witness(&self) -> Option<PointSet> {
        closedness_witness(self.domain.balls(), self.codomain.balls(), &self.table)
    }

    pub fn is_ball_continuous(&self) -> bool {
        self.continuity_witness().is_none()
    }

    pub fn is_ball_closed(&self) -> bool {
        self.closedness_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.domain.universe()) == self.codomain.universe()
    }

    /// `g ∘ f`, defined when the codomain of `f` is the domain of `g`.
    pub fn compose(g: &BallMap, f: &BallMap) -> Result<BallMap> {
        if f.codomain != g.domain {
            return Err(Error::SpaceMismatch(format!(
                "codomain {:?} is not domain {:?}",
                f.codomain, g.domain
            )));
        }
        Ok(BallMap {
            domain: f.domain.clone(),
            codomain: g.codomain.clone(),
            table: f.table.iter().map(|&y| g.table[y]).collect(),
        })
    }

    /// `{f⁻¹(B') : B' ∈ 𝓑'}`, possibly containing the empty set.
    pub fn preimage_family(&self) -> Vec<PointSet> {
        let mut fam: Vec<PointSet> = self.codomain.balls().iter().map(|b| self.preimage(*b)).collect();
        canonicalize_family(&mut fam);
        fam
    }

    /// `{f(B) : B ∈ 𝓑}`.
    pub fn image_family(&self) -> Vec<PointSet> {
        let mut fam: Vec<PointSet> = self.domain.balls().iter().map(|b| self.image(*b)).collect();
        canonicalize_family(&mut fam);
        fam
    }

    pub fn transfer_report(&self) -> TransferReport {
        let balls = self.domain.balls();
        let preimages = self.preimage_family();
        let images = self.image_family();
        let continuity_witness = self.continuity_witness();
        let closedness_witness = self.closedness_witness();
        let cond_brl = balls.iter().all(|b| preimages.contains(b));
        let cond_beq = preimages.as_slice() == balls;
        let cond_bprime_eq = images.as_slice() == self.codomain.balls();
        TransferReport {
            continuous: continuity_witness.is_none(),
            closed: closedness_witness.is_none(),
            surjective: self.is_surjective(),
            // every map between finite sets has finite fibres
            finite_to_one: true,
            cond_brl,
            cond_beq,
            cond_bprime_eq,
            poset_iso: self.induces_poset_isomorphism(),
            continuity_witness,
            closedness_witness,
        }
    }

    /// Whether `B ↦ f(B)` is a bijection `𝓑 → 𝓑'` that preserves and
    /// reflects inclusion.
    pub fn induces_poset_isomorphism(&self) -> bool {
        let balls = self.domain.balls();
        let images: Vec<PointSet> = balls.iter().map(|b| self.image(*b)).collect();
        if images.iter().any(|i| !self.codomain.contains_ball(*i)) {
            return false;
        }
        let mut distinct = images.clone();
        canonicalize_family(&mut distinct);
        if distinct.len() != balls.len() || distinct.len() != self.codomain.len() {
            return false;
        }
        (0..balls.len())
            .all(|i| (0..balls.len()).all(|j| balls[i].is_subset(balls[j]) == images[i].is_subset(images[j])))
    }

    /// `ψ_f(𝓝')`: preimages of a nest of the codomain, a nest of the domain
    /// when `f` is ball continuous.
    pub fn psi_nest(&self, nest: &Nest) -> Result<Nest> {
        if let Some(ball) = self.continuity_witness() {
            return Err(Error::NotContinuous { ball });
        }
        let members: Vec<PointSet> = nest.members().iter().map(|b| self.preimage(*b)).collect();
        debug_assert!(is_chain(&members));
        Nest::new(&self.domain, &members)
    }

    /// `φ_f(𝓝)`: images of a nest of the domain, a nest of the codomain when
    /// `f` is ball closed.
    pub fn phi_nest(&self, nest: &Nest) -> Result<Nest> {
        if let Some(ball) = self.closedness_witness() {
            return Err(Error::NotClosed { ball });
        }
        let members: Vec<PointSet> = nest.members().iter().map(|b| self.image(*b)).collect();
        Nest::new(&self.codomain, &members)
    }
}

/// Structural transfer conditions of a map `f: (X,𝓑) → (X',𝓑')`.
///
/// `cond_brl` is `𝓑 ⊆ {f⁻¹(B')}`, `cond_beq` is `𝓑 = {f⁻¹(B')}` and
/// `cond_bprime_eq` is `𝓑' = {f(B)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub continuous: bool,
    pub closed: bool,
    pub surjective: bool,
    pub finite_to_one: bool,
    pub cond_brl: bool,
    pub cond_beq: bool,
    pub cond_bprime_eq: bool,
    pub poset_iso: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub continuity_witness: Option<PointSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closedness_witness: Option<PointSet>,
}

impl TransferReport {
    /// `(B=) ⟹ continuous ∧ (Brl)` and `(B=) ∧ surjective ⟹ (B'=) ∧ iso`.
    pub fn invariants_hold(&self) -> bool {
        let beq_ok = !self.cond_beq || (self.continuous && self.cond_brl);
        let d_ok = !(self.cond_beq && self.surjective) || (self.cond_bprime_eq && self.poset_iso);
        beq_ok && d_ok
    }
}

/// A quotient space together with the inducing surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: Arc<FiniteBallSpace>,
    pub map: BallMap,
}

/// The quotient `(X', {f(B)})` of `space` under a surjection `table` onto
/// `0..target_size`. Every ball must be a union of fibres.
pub fn quotient(space: &FiniteBallSpace, table: &[usize], target_size: usize) -> Result<Quotient> {
    check_table(space.universe_size(), target_size, table)?;
    let hit = image(table, space.universe());
    if let Some(missing) = PointSet::full(target_size).difference(hit).first() {
        return Err(Error::NotSurjective { missing });
    }
    for &ball in space.balls() {
        if preimage(table, image(table, ball)) != ball {
            return Err(Error::BallNotSaturated { ball });
        }
    }
    let target = Arc::new(FiniteBallSpace::new(
        target_size,
        space.balls().iter().map(|b| image(table, *b)),
    )?);
    let map = BallMap::new(Arc::new(space.clone()), target.clone(), table.to_vec())?;
    Ok(Quotient { space: target, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    fn space(n: usize, balls: &[&[usize]]) -> Arc<FiniteBallSpace> {
        Arc::new(FiniteBallSpace::new(n, balls.iter().map(|b| s(b))).unwrap())
    }

    #[test]
    fn continuity_examples() {
        let x = space(2, &[&[0]]);
        assert!(BallMap::identity(x.clone()).is_ball_continuous());
        let f = BallMap::new(x.clone(), space(2, &[&[0]]), vec![0, 1]).unwrap();
        assert!(f.is_ball_continuous());
        // constant map missing the ball {1}
        let g = BallMap::new(x, space(2, &[&[1]]), vec![0, 0]).unwrap();
        assert!(!g.is_ball_continuous());
        assert_eq!(g.continuity_witness(), Some(s(&[1])));
    }

    #[test]
    fn closedness_examples() {
        let x = space(3, &[&[0, 1], &[2]]);
        assert!(BallMap::identity(x.clone()).is_ball_closed());
        let collapse = BallMap::new(x.clone(), space(1, &[&[0]]), vec![0, 0, 0]).unwrap();
        assert!(collapse.is_ball_closed());
        let f = BallMap::new(x, space(2, &[&[0, 1]]), vec![0, 0, 1]).unwrap();
        assert_eq!(f.closedness_witness(), Some(s(&[2])));
    }

    #[test]
    fn table_validation() {
        let x = space(2, &[&[0]]);
        assert!(matches!(
            BallMap::new(x.clone(), x.clone(), vec![0]),
            Err(Error::TableLength { .. })
        ));
        assert!(matches!(
            BallMap::new(x.clone(), x, vec![0, 2]),
            Err(Error::TableOutOfRange { .. })
        ));
    }

    #[test]
    fn compose_identity_and_mismatch() {
        let x = space(2, &[&[0]]);
        let y = space(2, &[&[1]]);
        let f = BallMap::new(x.clone(), y.clone(), vec![1, 0]).unwrap();
        let id = BallMap::identity(y.clone());
        assert_eq!(BallMap::compose(&id, &f).unwrap(), f);
        assert!(matches!(BallMap::compose(&f, &f), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn quotient_collapsing_pairs() {
        let x = space(4, &[&[0, 1], &[2, 3], &[0, 1, 2, 3]]);
        let q = quotient(&x, &[0, 0, 1, 1], 2).unwrap();
        assert_eq!(q.space.balls(), &[s(&[0]), s(&[1]), s(&[0, 1])]);
        let r = q.map.transfer_report();
        assert!(r.cond_beq && r.cond_bprime_eq && r.poset_iso && r.continuous && r.surjective);
        assert!(r.invariants_hold());
    }

    #[test]
    fn quotient_identity_and_errors() {
        let x = space(3, &[&[0], &[1, 2]]);
        let q = quotient(&x, &[0, 1, 2], 3).unwrap();
        assert_eq!(*q.space, *x);
        let y = space(2, &[&[0]]);
        assert!(matches!(
            quotient(&y, &[0, 0], 1),
            Err(Error::BallNotSaturated { ball }) if ball == s(&[0])
        ));
        assert!(matches!(
            quotient(&y, &[0, 0], 2),
            Err(Error::NotSurjective { missing: 1 })
        ));
    }

    #[test]
    fn transfer_report_of_identity_and_injection() {
        let x = space(2, &[&[0], &[0, 1]]);
        let r = BallMap::identity(x.clone()).transfer_report();
        assert!(r.continuous && r.closed && r.surjective && r.cond_beq && r.poset_iso);
        let y = space(3, &[&[0], &[0, 1]]);
        let inj = BallMap::new(x, y, vec![0, 1]).unwrap();
        let r = inj.transfer_report();
        assert!(r.finite_to_one && r.closed && !r.surjective);
        assert!(r.invariants_hold());
    }

    #[test]
    fn nest_transport() {
        let x = space(3, &[&[0], &[0, 1], &[0, 1, 2]]);
        let y = space(2, &[&[0], &[0, 1]]);
        let f = BallMap::new(x.clone(), y.clone(), vec![0, 1, 1]).unwrap();
        assert!(f.is_ball_continuous());
        let nest = Nest::new(&y, &[s(&[0]), s(&[0, 1])]).unwrap();
        let back = f.psi_nest(&nest).unwrap();
        assert_eq!(back.members(), &[s(&[0]), s(&[0, 1, 2])]);
        let single = Nest::new(&y, &[s(&[0])]).unwrap();
        assert_eq!(f.psi_nest(&single).unwrap().members().len(), 1);
        let forward = Nest::new(&x, &[s(&[0]), s(&[0, 1])]).unwrap();
        assert!(f.is_ball_closed());
        assert_eq!(f.phi_nest(&forward).unwrap().members(), &[s(&[0]), s(&[0, 1])]);
        let bad = BallMap::new(y.clone(), space(2, &[&[1]]), vec![0, 0]).unwrap();
        assert!(matches!(
            bad.psi_nest(&Nest::new(bad.codomain(), &[s(&[1])]).unwrap()),
            Err(Error::NotContinuous { .. })
        ));
    }
}
