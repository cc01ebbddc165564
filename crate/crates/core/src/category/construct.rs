//! Products and coproducts of finite ball spaces and their mediating maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::FiniteBallSpace;
use crate::maps::BallMap;
use crate::pointset::{canonicalize_family, PointSet, MAX_POINTS};

/// Most ball choices a coproduct family is allowed to enumerate.
pub const MAX_COPRODUCT_CHOICES: usize = 1 << 20;

fn product_size(sizes: &[usize]) -> Result<usize> {
    let mut total: usize = 1;
    for &s in sizes {
        total = total.saturating_mul(s);
    }
    if total > MAX_POINTS {
        return Err(Error::SizeBoundExceeded {
            size: total,
            bound: MAX_POINTS,
        });
    }
    Ok(total)
}

fn strides(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 1;
    for &s in sizes {
        out.push(acc);
        acc *= s;
    }
    out
}

/// The set of product points whose `k`-th coordinate lies in `factor`, i.e.
/// `∏ B_i` with `B_k = factor` and every other `B_i` full.
fn cylinder(total: usize, stride: usize, size: usize, factor: PointSet) -> PointSet {
    (0..total).filter(|p| factor.contains((p / stride) % size)).collect()
}

/// Product family on the mixed-radix universe: every cylinder over a member
/// of one factor family. Families may contain `∅`, the universe may be empty.
pub fn product_family(sizes: &[usize], families: &[&[PointSet]]) -> Result<Vec<PointSet>> {
    let total = product_size(sizes)?;
    let st = strides(sizes);
    let mut out = Vec::new();
    for (k, fam) in families.iter().enumerate() {
        for &b in *fam {
            out.push(cylinder(total, st[k], sizes[k], b));
        }
    }
    canonicalize_family(&mut out);
    Ok(out)
}

/// Coproduct family on the offset universe: every union choosing one member
/// from each component family.
pub fn coproduct_family(sizes: &[usize], families: &[&[PointSet]]) -> Result<Vec<PointSet>> {
    let total: usize = sizes.iter().sum();
    if total > MAX_POINTS {
        return Err(Error::SizeBoundExceeded {
            size: total,
            bound: MAX_POINTS,
        });
    }
    let choices = families.iter().fold(1usize, |acc, f| acc.saturating_mul(f.len()));
    if choices > MAX_COPRODUCT_CHOICES {
        return Err(Error::SizeBoundExceeded {
            size: choices,
            bound: MAX_COPRODUCT_CHOICES,
        });
    }
    if choices == 0 {
        return Ok(Vec::new());
    }
    let offsets = strides_by_sum(sizes);
    let mut out = Vec::with_capacity(choices);
    let mut digits = vec![0usize; families.len()];
    loop {
        let mut set = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            set |= families[i][d].bits() << offsets[i];
        }
        out.push(PointSet::from_bits(set));
        // odometer over the choices
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < families[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    canonicalize_family(&mut out);
    Ok(out)
}

fn strides_by_sum(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        out.push(acc);
        acc += s;
    }
    out
}

fn check_index_set(len: usize) -> Result<()> {
    if len == 0 {
        Err(Error::EmptyIndexSet)
    } else {
        Ok(())
    }
}

/// A product ball space together with its factors.
///
/// Points are tuples flattened by mixed radix with the first coordinate least
/// significant: `(y_1, y_2, ...) ↦ y_1 + |Y_1|·(y_2 + |Y_2|·(...))`.
#[derive(Clone, Debug)]
pub struct Product {
    space: Arc<FiniteBallSpace>,
    factors: Vec<Arc<FiniteBallSpace>>,
    strides: Vec<usize>,
}

pub fn product(spaces: &[FiniteBallSpace]) -> Result<Product> {
    check_index_set(spaces.len())?;
    let sizes: Vec<usize> = spaces.iter().map(|s| s.universe_size()).collect();
    let families: Vec<&[PointSet]> = spaces.iter().map(|s| s.balls()).collect();
    let balls = product_family(&sizes, &families)?;
    let total = product_size(&sizes)?;
    Ok(Product {
        space: Arc::new(FiniteBallSpace::new(total, balls)?),
        factors: spaces.iter().cloned().map(Arc::new).collect(),
        strides: strides(&sizes),
    })
}

impl Product {
    pub fn space(&self) -> &Arc<FiniteBallSpace> {
        &self.space
    }

    pub fn factors(&self) -> &[Arc<FiniteBallSpace>] {
        &self.factors
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coordinate(&self, point: usize, k: usize) -> usize {
        (point / self.strides[k]) % self.factors[k].universe_size()
    }

    pub fn decode(&self, point: usize) -> Vec<usize> {
        (0..self.factors.len()).map(|k| self.coordinate(point, k)).collect()
    }

    pub fn projection_table(&self, k: usize) -> Vec<usize> {
        (0..self.space.universe_size()).map(|p| self.coordinate(p, k)).collect()
    }

    pub fn projection(&self, k: usize) -> BallMap {
        BallMap::new(self.space.clone(), self.factors[k].clone(), self.projection_table(k)).expect("valid projection")
    }

    /// `z ↦ (f_i(z))_i` for raw tables sharing one domain.
    pub fn tuple_table(&self, tables: &[&[usize]]) -> Vec<usize> {
        let n = tables.first().map_or(0, |t| t.len());
        (0..n)
            .map(|z| tables.iter().zip(&self.strides).map(|(t, s)| t[z] * s).sum())
            .collect()
    }

    /// Number of tables `h` on `0..domain_size` with `p_i ∘ h = f_i` for all `i`.
    pub fn mediator_count(&self, tables: &[&[usize]], domain_size: usize) -> usize {
        let mut count = 1usize;
        for z in 0..domain_size {
            let matches = (0..self.space.universe_size())
                .filter(|&p| tables.iter().enumerate().all(|(i, t)| self.coordinate(p, i) == t[z]))
                .count();
            count = count.saturating_mul(matches);
        }
        count
    }
}

/// The unique map into the product induced by a continuous cone.
pub fn mediate_product(product: &Product, cone: &[BallMap]) -> Result<BallMap> {
    check_index_set(cone.len())?;
    if cone.len() != product.factors.len() {
        return Err(Error::SpaceMismatch(format!(
            "cone has {} maps for {} factors",
            cone.len(),
            product.factors.len()
        )));
    }
    let z = cone[0].domain().clone();
    for (i, f) in cone.iter().enumerate() {
        if **f.domain() != *z {
            return Err(Error::SpaceMismatch(format!(
                "map {i} of the cone has a different domain"
            )));
        }
        if **f.codomain() != *product.factors[i] {
            return Err(Error::SpaceMismatch(format!("map {i} does not land in factor {i}")));
        }
        if !f.is_ball_continuous() {
            return Err(Error::ConeNotContinuous { index: i });
        }
    }
    let tables: Vec<&[usize]> = cone.iter().map(|f| f.table()).collect();
    BallMap::new(z, product.space.clone(), product.tuple_table(&tables))
}

/// A coproduct ball space together with its components.
///
/// The point `y` of component `i` (tags start at 0) is stored at
/// `offset_i + y` where `offset_i = |Y_0| + ... + |Y_{i-1}|`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    space: Arc<FiniteBallSpace>,
    components: Vec<Arc<FiniteBallSpace>>,
    offsets: Vec<usize>,
}

pub fn coproduct(spaces: &[FiniteBallSpace]) -> Result<Coproduct> {
    check_index_set(spaces.len())?;
    let sizes: Vec<usize> = spaces.iter().map(|s| s.universe_size()).collect();
    let families: Vec<&[PointSet]> = spaces.iter().map(|s| s.balls()).collect();
    let balls = coproduct_family(&sizes, &families)?;
    Ok(Coproduct {
        space: Arc::new(FiniteBallSpace::new(sizes.iter().sum(), balls)?),
        components: spaces.iter().cloned().map(Arc::new).collect(),
        offsets: strides_by_sum(&sizes),
    })
}

impl Coproduct {
    pub fn space(&self) -> &Arc<FiniteBallSpace> {
        &self.space
    }

    pub fn components(&self) -> &[Arc<FiniteBallSpace>] {
        &self.components
    }

    pub fn encode(&self, tag: usize, point: usize) -> usize {
        self.offsets[tag] + point
    }

    /// `(tag, point)` of a coproduct point.
    pub fn decode(&self, x: usize) -> (usize, usize) {
        let tag = (0..self.components.len())
            .find(|&t| x >= self.offsets[t] && x - self.offsets[t] < self.components[t].universe_size())
            .expect("point in range");
        (tag, x - self.offsets[tag])
    }

    pub fn injection_table(&self, j: usize) -> Vec<usize> {
        (0..self.components[j].universe_size())
            .map(|y| self.offsets[j] + y)
            .collect()
    }

    pub fn injection(&self, j: usize) -> BallMap {
        BallMap::new(self.components[j].clone(), self.space.clone(), self.injection_table(j)).expect("valid injection")
    }

    /// `ι_i(y) ↦ f_i(y)` for raw tables leaving the components.
    pub fn copair_table(&self, tables: &[&[usize]]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.space.universe_size());
        for t in tables {
            out.extend_from_slice(t);
        }
        out
    }

    /// Number of tables `h` into `0..codomain_size` with `h ∘ ι_i = f_i` for all `i`.
    pub fn mediator_count(&self, tables: &[&[usize]], codomain_size: usize) -> usize {
        let mut count = 1usize;
        for x in 0..self.space.universe_size() {
            let mut forced: Option<usize> = None;
            let mut consistent = true;
            for (i, t) in tables.iter().enumerate() {
                for (y, &v) in t.iter().enumerate() {
                    if self.encode(i, y) == x {
                        match forced {
                            Some(w) if w != v => consistent = false,
                            _ => forced = Some(v),
                        }
                    }
                }
            }
            let options = match (consistent, forced) {
                (false, _) => 0,
                (true, Some(_)) => 1,
                (true, None) => codomain_size,
            };
            count = count.saturating_mul(options);
        }
        count
    }
}

/// The unique map out of the coproduct induced by a continuous cocone.
pub fn mediate_coproduct(coproduct: &Coproduct, cocone: &[BallMap]) -> Result<BallMap> {
    check_index_set(cocone.len())?;
    if cocone.len() != coproduct.components.len() {
        return Err(Error::SpaceMismatch(format!(
            "cocone has {} maps for {} components",
            cocone.len(),
            coproduct.components.len()
        )));
    }
    let z = cocone[0].codomain().clone();
    for (i, f) in cocone.iter().enumerate() {
        if **f.codomain() != *z {
            return Err(Error::SpaceMismatch(format!(
                "map {i} of the cocone has a different codomain"
            )));
        }
        if **f.domain() != *coproduct.components[i] {
            return Err(Error::SpaceMismatch(format!("map {i} does not leave component {i}")));
        }
        if !f.is_ball_continuous() {
            return Err(Error::ConeNotContinuous { index: i });
        }
    }
    let tables: Vec<&[usize]> = cocone.iter().map(|f| f.table()).collect();
    BallMap::new(coproduct.space.clone(), z, coproduct.copair_table(&tables))
}

/// Checks `⋂_j ∏_i B_{i,j} = ∏_i ⋂_j B_{i,j}` and
/// `⋂_j ⨆_i ι_i(B_{i,j}) = ⨆_i ⋂_j B_{i,j}`.
///
/// `families[i]` lists the sets `B_{i,1}, ..., B_{i,m}` of component `i` and
/// every list must have the same length `m >= 1`.
pub fn intersection_commutation_check(sizes: &[usize], families: &[Vec<PointSet>]) -> Result<bool> {
    check_index_set(sizes.len())?;
    if families.len() != sizes.len() {
        return Err(Error::SpaceMismatch("one set list per component is required".into()));
    }
    let m = families[0].len();
    if m == 0 || families.iter().any(|f| f.len() != m) {
        return Err(Error::Invalid("set lists must share a nonzero length".into()));
    }
    for (i, fam) in families.iter().enumerate() {
        for &b in fam {
            if !b.is_subset(PointSet::full(sizes[i])) {
                return Err(Error::OutOfRangePoint {
                    point: b.last().unwrap_or(0),
                    n: sizes[i],
                });
            }
        }
    }
    let total = product_size(sizes)?;
    let st = strides(sizes);
    let boxed = |factors: &[PointSet]| -> PointSet {
        (0..total)
            .filter(|p| {
                factors
                    .iter()
                    .enumerate()
                    .all(|(i, b)| b.contains((p / st[i]) % sizes[i]))
            })
            .collect()
    };
    let meet = |fam: &[PointSet]| fam.iter().fold(PointSet::full(MAX_POINTS), |a, b| a.intersection(*b));

    let column = |j: usize| -> Vec<PointSet> { families.iter().map(|f| f[j]).collect() };
    let lhs_prod = (0..m).fold(PointSet::full(total), |acc, j| acc.intersection(boxed(&column(j))));
    let meets: Vec<PointSet> = families.iter().map(|f| meet(f)).collect();
    let rhs_prod = boxed(&meets);

    let offsets = strides_by_sum(sizes);
    let union_of = |parts: &[PointSet]| -> PointSet {
        PointSet::from_bits(
            parts
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, b)| acc | (b.bits() << offsets[i])),
        )
    };
    let lhs_co = (0..m).fold(PointSet::full(MAX_POINTS), |acc, j| {
        acc.intersection(union_of(&column(j)))
    });
    let rhs_co = union_of(&meets);
    Ok(lhs_prod == rhs_prod && lhs_co == rhs_co)
}
