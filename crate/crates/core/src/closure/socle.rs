use crate::config::WorkLimits;
use crate::error::Error;
use crate::ffpoly::{ExponentVector, MonomialOrder, Polynomial};
use crate::groebner::IdealPresentation;
use crate::hilbert::Staircase;

/// The socle `(I : m)/I` of an Artinian quotient: representative
/// polynomials (normal forms modulo `I`) and the socle dimension.
#[derive(Debug, Clone)]
pub struct SocleData {
    pub representatives: Vec<Polynomial>,
    pub dimension: u64,
}

/// Computes the socle of `S/I`. Monomial ideals go through a staircase
/// corner scan; general ideals through colon ideals and linear algebra
/// over the standard monomial basis.
pub fn socle_ideal(i: &IdealPresentation, limits: &WorkLimits) -> Result<SocleData, Error> {
    if i.is_monomial() {
        let stair = Staircase::new(i.nvars(), i.monomial_exponents()?);
        stair.colength()?; // zero-dimensionality check
        let corners = socle_monomials(&stair);
        let reps = corners
            .iter()
            .map(|m| Polynomial::monomial(i.modulus(), m.clone(), 1))
            .collect::<Vec<_>>();
        let dim = reps.len() as u64;
        return Ok(SocleData { representatives: reps, dimension: dim });
    }
    general_socle(i, limits)
}

/// Standard monomials `u` with `u * x_j` in the ideal for every `j` —
/// the monomial basis of the socle of a monomial Artinian quotient.
pub(crate) fn socle_monomials(stair: &Staircase) -> Vec<ExponentVector> {
    let n = stair.nvars();
    standard_monomials(stair)
        .into_iter()
        .filter(|u| (0..n).all(|j| stair.contains(&u.add(&ExponentVector::unit(n, j)))))
        .collect()
}

/// All standard monomials of a zero-dimensional staircase, sorted.
pub(crate) fn standard_monomials(stair: &Staircase) -> Vec<ExponentVector> {
    let n = stair.nvars();
    let mut bounds = vec![0u32; n];
    for g in stair.generators() {
        let mut support = g.support();
        if let (Some(v), None) = (support.next(), support.next()) {
            let e = g.0[v];
            bounds[v] = if bounds[v] == 0 { e } else { bounds[v].min(e) };
        }
    }
    debug_assert!(stair.generators().is_empty() || stair.is_zero_dimensional());
    let mut out = Vec::new();
    let mut exp = vec![0u32; n];
    loop {
        let m = ExponentVector(exp.clone());
        if !stair.contains(&m) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            exp[i] += 1;
            if exp[i] < bounds[i] {
                break;
            }
            exp[i] = 0;
            i += 1;
        }
    }
}

fn general_socle(i: &IdealPresentation, limits: &WorkLimits) -> Result<SocleData, Error> {
    let p = i.modulus();
    let n = i.nvars();
    let order = MonomialOrder::grevlex();
    let basis = i.groebner_basis(&order, limits)?;
    if basis.is_unit_ideal() {
        return Err(Error::NotZeroDimensional("unit ideal".into()));
    }
    let stair = Staircase::new(n, basis.leading_terms().to_vec());
    let total = stair.colength()?;
    let m = IdealPresentation::maximal_ideal(p, n);
    let colon = i.colon_ideal(&m, limits)?;
    let colon_basis = colon.groebner_basis(&order, limits)?;
    let colon_stair = Staircase::new(n, colon_basis.leading_terms().to_vec());
    let dimension = total - colon_stair.colength().unwrap_or(0);

    // Basis of (I : m)/I: close the span of the colon generators' normal
    // forms under multiplication by the variables.
    let std_mons = standard_monomials(&stair);
    let index = |m: &ExponentVector| std_mons.binary_search(m).ok();
    let to_vec = |f: &Polynomial| -> Vec<u32> {
        let mut v = vec![0u32; std_mons.len()];
        for (mon, c) in f.terms() {
            let idx = index(mon).expect("normal form is supported on standard monomials");
            v[idx] = *c;
        }
        v
    };
    let mut echelon: Vec<(usize, Vec<u32>, Polynomial)> = Vec::new();
    let mut queue: Vec<Polynomial> = colon
        .generators()
        .iter()
        .map(|g| basis.normal_form(g))
        .collect();
    while let Some(f) = queue.pop() {
        let mut v = to_vec(&f);
        let mut f = f;
        loop {
            let lead = match v.iter().position(|&x| x != 0) {
                None => break,
                Some(i) => i,
            };
            match echelon.iter().find(|(pi, _, _)| *pi == lead) {
                Some((_, bv, bf)) => {
                    let c = v[lead];
                    for (x, y) in v.iter_mut().zip(bv) {
                        *x = p.sub(*x, p.mul(c, *y));
                    }
                    f = f.sub(&bf.scale(c as i64))?;
                }
                None => {
                    let inv = p.inv(v[lead]);
                    let v: Vec<u32> = v.iter().map(|&x| p.mul(x, inv)).collect();
                    let f = f.scale(inv as i64);
                    for j in 0..n {
                        let xj = Polynomial::variable(p, n, j);
                        queue.push(basis.normal_form(&f.mul(&xj)?));
                    }
                    echelon.push((lead, v, f));
                    break;
                }
            }
        }
    }
    debug_assert_eq!(echelon.len() as u64, dimension);
    Ok(SocleData {
        representatives: echelon.into_iter().map(|(_, _, f)| f).collect(),
        dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_polynomial, PrimeModulus};

    fn ideal(p: u64, vars: &[&str], gens: &[&str]) -> IdealPresentation {
        let p = PrimeModulus::new(p).unwrap();
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let polys = gens
            .iter()
            .map(|s| parse_polynomial(s, p, &names).unwrap())
            .collect();
        IdealPresentation::from_gens(p, names.len(), polys)
    }

    #[test]
    fn socle_of_square_pair() {
        // (x^2, y^2): socle spanned by xy
        let s = socle_ideal(&ideal(5, &["x", "y"], &["x^2", "y^2"]), &WorkLimits::default())
            .unwrap();
        assert_eq!(s.dimension, 1);
        assert_eq!(s.representatives.len(), 1);
        assert!(s.representatives[0].is_monomial());
        assert_eq!(s.representatives[0].terms()[0].0, ExponentVector(vec![1, 1]));
    }

    #[test]
    fn socle_of_maximal_ideal() {
        let s = socle_ideal(&ideal(5, &["x", "y"], &["x", "y"]), &WorkLimits::default()).unwrap();
        assert_eq!(s.dimension, 1);
        assert!(s.representatives[0].terms()[0].0.is_zero());
    }

    #[test]
    fn socle_of_m_squared() {
        // m^2 in k[x,y]: socle {x, y}
        let s = socle_ideal(
            &ideal(5, &["x", "y"], &["x^2", "x*y", "y^2"]),
            &WorkLimits::default(),
        )
        .unwrap();
        assert_eq!(s.dimension, 2);
    }

    #[test]
    fn general_route_agrees_on_monomial_input() {
        // Force the general path with a non-monomial generator set for
        // the same ideal: (x^2, y^2, x^2 + y^2) reduces to (x^2, y^2).
        let s = socle_ideal(
            &ideal(5, &["x", "y"], &["x^2", "x^2+y^2"]),
            &WorkLimits::default(),
        )
        .unwrap();
        assert_eq!(s.dimension, 1);
    }

    #[test]
    fn non_artinian_is_error() {
        assert!(socle_ideal(&ideal(5, &["x", "y"], &["x^2"]), &WorkLimits::default()).is_err());
    }
}
