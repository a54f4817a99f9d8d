//! Incidence geometry of the rank-1 locus: tangent spaces, entry-locus
//! quadrics, the meet of two lines of the plane, the double projection and
//! the polar map of the cubic.

use crate::composition::AlgebraSpec;
use crate::error::{Error, Result};
use crate::exactmath::{orth_complement, ExactMatrix, Field, Scalar, Subspace};
use crate::jordan::{adjoint, ambient_dim, cross, gram_matrix, jmul, jtrace, pair, rank_of, JordanElement};

/// A rank-1 element, considered projectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePoint(JordanElement);

impl IncidencePoint {
    pub fn new(x: JordanElement) -> Result<Self> {
        match rank_of(&x) {
            1 => Ok(IncidencePoint(x)),
            found => Err(Error::WrongRank { expected: 1, found }),
        }
    }

    pub fn element(&self) -> &JordanElement {
        &self.0
    }

    pub fn into_element(self) -> JordanElement {
        self.0
    }
}

impl AsRef<JordanElement> for IncidencePoint {
    fn as_ref(&self) -> &JordanElement {
        &self.0
    }
}

fn linear_map_matrix(field: Field, spec: &AlgebraSpec, f: impl Fn(&JordanElement) -> JordanElement) -> ExactMatrix {
    let n = ambient_dim(spec.dim());
    let mut m = ExactMatrix::zeros(field, n, n);
    for j in 0..n {
        let image = f(&JordanElement::basis_vector(field, spec, j)).to_vector();
        for (i, x) in image.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// Matrix of `h ↦ cross(p, h)`.
pub fn polar_map_matrix(p: &JordanElement) -> ExactMatrix {
    linear_map_matrix(p.field(), p.spec(), |h| cross(p, h))
}

/// Kernel of `h ↦ cross(y, h)`.
pub fn tangent_space(y: &IncidencePoint) -> Subspace {
    polar_map_matrix(y.element()).kernel()
}

/// Kernel of the differential of `x ↦ x∘x − trace(x) x` at `y`.
pub fn tangent_space_jacobian(y: &IncidencePoint) -> Subspace {
    let y = y.element();
    let two = y.field().from_i64(2);
    let ty = jtrace(y);
    linear_map_matrix(y.field(), y.spec(), |h| jmul(y, h).scale(&two).sub(&y.scale(&jtrace(h))).sub(&h.scale(&ty)))
        .kernel()
}

/// Linear span of the entry-locus quadric of `z`: the pairing-orthogonal of its tangent space.
pub fn quadric_span(z: &IncidencePoint) -> Subspace {
    let z = z.element();
    orth_complement(&polar_map_matrix(z).kernel(), &gram_matrix(z.field(), z.spec()))
        .expect("the pairing is non-degenerate")
}

/// `p ∈ Q̄_z`: `p` pairs to zero with the whole tangent space of `z`.
pub fn in_entry_quadric(p: &IncidencePoint, z: &IncidencePoint) -> bool {
    let p = p.element();
    tangent_space(z).basis_vectors().iter().all(|h| {
        let h = JordanElement::from_vector(p.field(), p.spec(), h).expect("ambient vector");
        pair(p, &h).is_zero()
    })
}

/// The point where the lines of `y` and `y0` meet: `cross(y, y0)`, normalized.
pub fn meet_olines(y: &IncidencePoint, y0: &IncidencePoint) -> Result<IncidencePoint> {
    let m = cross(y.element(), y0.element());
    if m.is_zero() {
        return Err(Error::DegeneratePair);
    }
    IncidencePoint::new(m.normalized())
}

fn require_chart(y: &IncidencePoint) -> Result<&JordanElement> {
    let y = y.element();
    if y.r.is_zero() {
        Err(Error::OutsideChart)
    } else {
        Ok(y)
    }
}

/// Lower-right block `(0, s, t; u)` of a chart point: the linear projection from `E11`.
pub fn double_projection_linear(y: &IncidencePoint) -> Result<JordanElement> {
    let y = require_chart(y)?;
    let zero = JordanElement::zero(y.field(), y.spec());
    Ok(JordanElement { s: y.s.clone(), t: y.t.clone(), u: y.u.clone(), ..zero })
}

/// Double projection from `E11` in the chart: the lower-right block followed by
/// the polarity of `Q_{E11}`, which exchanges the two diagonal entries.
///
/// For `y = rank1_param(v, w)` the image is `(0, |v|², |w|²; u = w̄v̄)`.
pub fn double_projection_chart(y: &IncidencePoint) -> Result<IncidencePoint> {
    let b = double_projection_linear(y)?;
    let image = JordanElement { s: b.t.clone(), t: b.s.clone(), ..b };
    if image.is_zero() {
        return Err(Error::ZeroVector);
    }
    IncidencePoint::new(image.normalized())
}

/// `{v : pair(v, cross(p, h)) = 0 for all h}` for a rank-2 `p`.
pub fn cokernel_polar(p: &JordanElement) -> Result<Subspace> {
    let rank = rank_of(p);
    if rank != 2 {
        return Err(Error::WrongRank { expected: 2, found: rank });
    }
    let m = polar_map_matrix(p);
    let image = Subspace::span(p.field(), m.rows(), &m.transpose().row_vecs())?;
    orth_complement(&image, &gram_matrix(p.field(), p.spec()))
}

/// Nonzero `t` with `(m + t h)# = 0`, for rank-1 `m`.
///
/// Since `m# = 0`, `(m + t h)# = t (cross(m, h) + t h#)`, so a second
/// rank-1 point exists exactly when `cross(m, h) = −t h#` for some `t ≠ 0`.
pub fn second_rank_one_on_line(m: &JordanElement, h: &JordanElement) -> Option<Scalar> {
    let c = cross(m, h).to_vector();
    let d = adjoint(h).to_vector();
    let k = d.iter().position(|x| !x.is_zero())?;
    let t = -(&c[k] / &d[k]);
    if t.is_zero() {
        return None;
    }
    c.iter().zip(&d).all(|(ci, di)| (ci + &(&t * di)).is_zero()).then_some(t)
}

/// Joint incidence space `⟨Q_y⟩ ∩ ⟨Q_{y0}⟩`.
pub fn joint_incidence_space(y: &IncidencePoint, y0: &IncidencePoint) -> Result<Subspace> {
    quadric_span(y).intersect(&quadric_span(y0))
}

/// Elements of a subspace as Jordan elements.
pub fn subspace_elements(s: &Subspace, spec: &AlgebraSpec) -> Vec<JordanElement> {
    s.basis_vectors().iter().map(|v| JordanElement::from_vector(s.field(), spec, v).expect("ambient vector")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::CompositionElement;

    fn o() -> AlgebraSpec {
        AlgebraSpec::octonions()
    }

    fn e(i: usize) -> JordanElement {
        JordanElement::e(Field::Rational, &o(), i)
    }

    fn pt(i: usize) -> IncidencePoint {
        IncidencePoint::new(e(i)).unwrap()
    }

    fn coordinate_space(free: &[usize]) -> Subspace {
        let f = Field::Rational;
        let vs: Vec<Vec<Scalar>> =
            free.iter().map(|&k| (0..27).map(|i| if i == k { f.one() } else { f.zero() }).collect()).collect();
        Subspace::span(f, 27, &vs).unwrap()
    }

    #[test]
    fn tangent_space_at_e11() {
        let mut free = vec![0];
        free.extend(11..27);
        let t = tangent_space(&pt(1));
        assert_eq!(t, coordinate_space(&free));
        assert_eq!(t, tangent_space_jacobian(&pt(1)));
    }

    #[test]
    fn quadric_span_at_e22() {
        let mut free = vec![0, 2];
        free.extend(11..19);
        let q = quadric_span(&pt(2));
        assert_eq!(q, coordinate_space(&free));
        assert!(!q.contains(&e(2).to_vector()));
    }

    #[test]
    fn entry_quadric_membership() {
        assert!(in_entry_quadric(&pt(1), &pt(2)));
        assert!(!in_entry_quadric(&pt(2), &pt(2)));
    }

    #[test]
    fn meets() {
        assert_eq!(meet_olines(&pt(1), &pt(3)).unwrap(), pt(2));
        assert_eq!(meet_olines(&pt(1), &pt(1)), Err(Error::DegeneratePair));
    }

    #[test]
    fn polar_ranks_at_standard_points() {
        let f = Field::Rational;
        assert_eq!(polar_map_matrix(&JordanElement::identity(f, &o())).rank(), 27);
        assert_eq!(polar_map_matrix(&e(1).add(&e(2))).rank(), 18);
        assert_eq!(polar_map_matrix(&e(1)).rank(), 10);
    }

    #[test]
    fn cokernel_pattern_at_e11_plus_e22() {
        let f = Field::Rational;
        let mut vs = vec![JordanElement::diag_ints(f, &o(), 1, -1, 0).to_vector()];
        for k in 0..8 {
            let w = CompositionElement::basis(f, &o(), k);
            vs.push(JordanElement { w, ..JordanElement::zero(f, &o()) }.to_vector());
        }
        let expected = Subspace::span(f, 27, &vs).unwrap();
        assert_eq!(cokernel_polar(&e(1).add(&e(2))).unwrap(), expected);
        assert!(cokernel_polar(&e(1)).is_err());
    }

    #[test]
    fn chart_center_is_rejected() {
        assert_eq!(double_projection_chart(&pt(1)), Err(Error::ZeroVector));
        assert_eq!(double_projection_chart(&pt(2)), Err(Error::OutsideChart));
    }
}
