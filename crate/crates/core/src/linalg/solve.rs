use super::{Elem, GradedMatrix, OrderedBasis, Scalar, ScalarDomain};
use crate::error::{Error, Result};

/// Gauss–Jordan elimination in place, pivoting only in the first
/// `pivot_cols` columns. Returns the pivot columns in row order.
fn gauss_jordan(s: ScalarDomain, rows: &mut [Vec<Scalar>], pivot_cols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !s.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = s.inv(&rows[r][c])?;
        for v in rows[r].iter_mut() {
            *v = s.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || s.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !s.is_zero(pv) {
                    *v = s.sub(v, &s.mul(&factor, pv))?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

fn dense_rows(f: &GradedMatrix) -> Vec<Vec<Scalar>> {
    (0..f.rows()).map(|r| (0..f.cols()).map(|c| f.get(r, c).clone()).collect()).collect()
}

fn require_field(s: ScalarDomain, what: &str) -> Result<()> {
    if s.is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedDomain(format!("{what} needs a field, got {s:?}")))
    }
}

/// A basis of the null space of `Mat(f)`, one vector per free column in
/// ascending order; each vector has a 1 at its free column and zeros at the
/// other free columns.
pub fn kernel_basis(f: &GradedMatrix) -> Result<Vec<Vec<Scalar>>> {
    let s = f.scalars();
    require_field(s, "kernel_basis")?;
    let mut rows = dense_rows(f);
    let pivots = gauss_jordan(s, &mut rows, f.cols())?;
    let mut out = Vec::new();
    for free in (0..f.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![s.zero(); f.cols()];
        v[free] = s.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = s.neg(&rows[i][free])?;
        }
        out.push(v);
    }
    Ok(out)
}

/// Complement of the image of a Boolean relation: the selector is the
/// partial identity from `cod(f)` onto the labels whose rows are all zero.
pub fn bool_cokernel(f: &GradedMatrix) -> Result<(GradedMatrix, OrderedBasis)> {
    let s = f.scalars();
    if s != ScalarDomain::Boolean {
        return Err(Error::UnsupportedDomain(format!("bool_cokernel needs the Boolean semiring, got {s:?}")));
    }
    let kept: Vec<Elem> =
        (0..f.rows()).filter(|&r| f.row_support(r).is_empty()).map(|r| f.codomain().get(r).clone()).collect();
    let kept = OrderedBasis::new(kept)?;
    let selector = GradedMatrix::from_fn(s, f.codomain().clone(), kept.clone(), |k, x| s.from_u64(u64::from(k == x)));
    Ok((selector, kept))
}

/// The unique `g` with `s;g = f`, i.e. `Mat(g)·Mat(s) = Mat(f)`, for `s` a
/// Boolean selector or a field matrix with independent rows. In the field
/// case this is the Vec-direction statement that each column of `f` is
/// expressed in the basis given by the rows of `s`.
pub fn factor_through(s: &GradedMatrix, f: &GradedMatrix) -> Result<GradedMatrix> {
    let sc = s.scalars();
    if sc != f.scalars() {
        return Err(Error::Domain("factor_through across scalar domains".into()));
    }
    if let Some(c) = (0..f.cols())
        .find(|&c| !s.domain().contains(f.domain().get(c)) && (0..f.rows()).any(|r| !sc.is_zero(f.get(r, c))))
    {
        return Err(Error::Factorization {
            witness: f.domain().get(c).to_string(),
            reason: "map is nonzero outside the domain of the epimorphism".into(),
        });
    }
    let f = f.rebase(s.domain(), f.codomain());
    let kept = s.codomain().clone();
    let mut g = GradedMatrix::zero(sc, kept.clone(), f.codomain().clone());
    if sc == ScalarDomain::Boolean {
        let mut source = vec![None; s.cols()];
        for k in 0..s.rows() {
            let support = s.row_support(k);
            if support.len() != 1 || source[support[0].0].is_some() {
                return Err(Error::Domain("Boolean factorization needs a selector".into()));
            }
            source[support[0].0] = Some(k);
        }
        for c in 0..s.cols() {
            match source[c] {
                Some(k) => {
                    for z in 0..f.rows() {
                        g.set(z, k, f.get(z, c).clone());
                    }
                }
                None => {
                    if (0..f.rows()).any(|z| !sc.is_zero(f.get(z, c))) {
                        return Err(Error::Factorization {
                            witness: s.domain().get(c).to_string(),
                            reason: "map does not vanish on the image being quotiented".into(),
                        });
                    }
                }
            }
        }
        return Ok(g);
    }
    let mut srows = dense_rows(s);
    let pivots = gauss_jordan(sc, &mut srows, s.cols())?;
    if pivots.len() != s.rows() {
        return Err(Error::Domain("epimorphism rows are linearly dependent".into()));
    }
    let k = s.rows();
    // Solve Y·S_P = F_P on the pivot columns, then verify every column.
    let mut aug: Vec<Vec<Scalar>> = pivots
        .iter()
        .map(|&p| {
            let mut row: Vec<Scalar> = (0..k).map(|i| s.get(i, p).clone()).collect();
            row.extend((0..f.rows()).map(|z| f.get(z, p).clone()));
            row
        })
        .collect();
    let piv = gauss_jordan(sc, &mut aug, k)?;
    if piv.len() != k {
        return Err(Error::Internal("pivot block is singular".into()));
    }
    for i in 0..k {
        for z in 0..f.rows() {
            g.set(z, i, aug[i][k + z].clone());
        }
    }
    let back = s.compose(&g)?;
    if let Some((_, c)) = back.first_difference(&f) {
        return Err(Error::Factorization {
            witness: s.domain().get(c).to_string(),
            reason: "residual is nonzero".into(),
        });
    }
    Ok(g)
}
