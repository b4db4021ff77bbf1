//! Simplicial complexes and barycentric subdivision as a cone.

use std::collections::BTreeSet;

use crate::chain::{BasedComplex, CellLabel};
use crate::cone::{ConeSpec, Level};
use crate::f2linalg::BitMatrix;

use super::{label_matrix, Construction, ConstructionError};

type Simplex = Vec<i64>;
type Flag = Vec<Simplex>;

/// Downward-closed family of finite vertex sets, stored by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Closure of the given facets under taking faces.
    ///
    /// # Errors
    ///
    /// Rejects empty facet lists, empty facets and repeated vertices.
    pub fn from_facets(facets: &[Vec<i64>]) -> Result<Self, ConstructionError> {
        if facets.is_empty() {
            return Err(ConstructionError::Parameter("simplicial complex needs a facet".into()));
        }
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.len() != facet.len() {
                return Err(ConstructionError::Parameter(format!("bad facet {facet:?}")));
            }
            if f.len() > 16 {
                return Err(ConstructionError::Parameter("facets of more than 16 vertices".into()));
            }
            for mask in 1u32..(1 << f.len()) {
                all.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(1) - 1;
        let mut simplices = vec![Vec::new(); top + 1];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        Ok(Self { simplices })
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Simplices of dimension `k`, sorted.
    #[must_use]
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }
}

fn simplex_label(s: &[i64]) -> CellLabel {
    CellLabel::Tuple(s.iter().map(|&v| CellLabel::Int(v)).collect())
}

fn flag_label(f: &[Simplex]) -> CellLabel {
    CellLabel::Tuple(f.iter().map(|s| simplex_label(s)).collect())
}

fn parse_simplex(label: &CellLabel) -> Simplex {
    label
        .parts()
        .expect("simplex label")
        .iter()
        .map(|v| match v {
            CellLabel::Int(i) => *i,
            _ => unreachable!("simplex vertices are integers"),
        })
        .collect()
}

fn parse_flag(label: &CellLabel) -> Flag {
    label.parts().expect("flag label").iter().map(parse_simplex).collect()
}

/// Chain complex of `K` with `∂` deleting one vertex at a time.
#[must_use]
pub fn simpl_chain(k: &SimplicialComplex) -> BasedComplex {
    let bases: Vec<Vec<CellLabel>> = (0..=k.dim()).map(|d| k.simplices(d).iter().map(|s| simplex_label(s)).collect()).collect();
    let c = BasedComplex::new(
        bases.clone(),
        (1..=k.dim())
            .map(|d| BitMatrix::zeros(bases[d - 1].len(), bases[d].len()))
            .collect(),
    )
    .expect("consistent shapes");
    let diffs = (1..=k.dim())
        .map(|d| {
            label_matrix(&bases[d], &c, d - 1, |l| {
                let s = parse_simplex(l);
                (0..s.len())
                    .map(|j| {
                        let mut t = s.clone();
                        t.remove(j);
                        simplex_label(&t)
                    })
                    .collect()
            })
        })
        .collect();
    BasedComplex::new(bases, diffs).expect("simplicial boundary is a differential")
}

/// Strict chains of proper faces below `top`, extended downward from `flag`.
fn extend_flags(flag: &mut Flag, out: &mut Vec<Flag>) {
    out.push(flag.clone());
    let last = flag.last().expect("nonempty flag").clone();
    if last.len() == 1 {
        return;
    }
    for mask in 1u32..(1 << last.len()) - 1 {
        let face: Simplex = last.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        flag.push(face);
        extend_flags(flag, out);
        flag.pop();
    }
}

/// Barycentric subdivision: level `s` holds the flags `σ_m ⊋ … ⊋ σ_0` with
/// `dim σ_m = s`, in degree `m`.
///
/// # Errors
///
/// Fails only on internal inconsistencies.
pub fn barycentric_cone(k: &SimplicialComplex) -> Result<Construction, ConstructionError> {
    let n = k.dim();
    let mut levels = Vec::with_capacity(n + 1);
    let mut level_flags: Vec<Vec<Vec<Flag>>> = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut by_degree: Vec<Vec<Flag>> = vec![Vec::new(); s + 1];
        for top in k.simplices(s) {
            let mut out = Vec::new();
            extend_flags(&mut vec![top.clone()], &mut out);
            for f in out {
                by_degree[f.len() - 1].push(f);
            }
        }
        for flags in &mut by_degree {
            flags.sort();
        }
        let bases: Vec<Vec<CellLabel>> = by_degree.iter().map(|fs| fs.iter().map(|f| flag_label(f)).collect()).collect();
        let zero = BasedComplex::new(
            bases.clone(),
            (1..=s).map(|d| BitMatrix::zeros(bases[d - 1].len(), bases[d].len())).collect(),
        )?;
        let diffs = (1..=s)
            .map(|d| {
                label_matrix(&bases[d], &zero, d - 1, |l| {
                    let f = parse_flag(l);
                    (1..f.len())
                        .map(|j| {
                            let mut g = f.clone();
                            g.remove(j);
                            flag_label(&g)
                        })
                        .collect()
                })
            })
            .collect();
        levels.push(Level::new(BasedComplex::new(bases, diffs)?, 0));
        level_flags.push(by_degree);
    }
    let mut spec = ConeSpec::new(levels);
    for s in 1..=n {
        for r in 0..s {
            for d in 1..=s {
                spec.set_block_by_labels(r, s, d, |l| {
                    let mut f = parse_flag(l);
                    f.remove(0);
                    if f[0].len() == r + 1 {
                        vec![flag_label(&f)]
                    } else {
                        Vec::new()
                    }
                })?;
            }
        }
    }
    let declared = simpl_chain(k);
    let declared_reps = (0..=n)
        .map(|s| {
            let level = &spec.level(s).complex;
            label_matrix(declared.basis(s), level, s, |l| {
                let top = parse_simplex(l);
                level_flags[s][s]
                    .iter()
                    .filter(|f| f[0] == top)
                    .map(|f| flag_label(f))
                    .collect()
            })
        })
        .collect();
    Ok(Construction {
        name: "barycentric".into(),
        spec,
        declared,
        declared_reps,
        regular_degrees: (0..=n).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_boundary() {
        let k = SimplicialComplex::from_facets(&[vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(k.dim(), 2);
        assert_eq!(k.simplices(0).len(), 4);
        assert_eq!(k.simplices(1).len(), 4);
        let c = simpl_chain(&k);
        c.validate().unwrap();
        assert_eq!(c.betti().unwrap(), vec![1, 0, 0]);
        assert!(SimplicialComplex::from_facets(&[vec![1, 1]]).is_err());
    }

    #[test]
    fn subdivided_triangle() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let c = barycentric_cone(&k).unwrap();
        let v = c.verify().unwrap();
        assert_eq!(v.total.dims(), vec![7, 12, 6]);
        assert_eq!(v.total.betti().unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn subdivided_circle_and_sphere() {
        let circle = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let v = barycentric_cone(&circle).unwrap().verify().unwrap();
        assert_eq!(v.total.betti().unwrap(), vec![1, 1]);
        let sphere = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let v = barycentric_cone(&sphere).unwrap().verify().unwrap();
        assert_eq!(v.total.betti().unwrap(), vec![1, 0, 1]);
    }
}
