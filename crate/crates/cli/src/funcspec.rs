//! Function-spec parsing: inline polynomials (`poly:c0,c1,...`), constants
//! (`const:c`), and the named trial-family members.

use smoothness_lab::error::{Error, Result};
use smoothness_lab::numerics::funcrep::FuncRep;
use smoothness_lab::verify::TrialFamily;

/// Parse a function spec.
///
/// * `poly:c0,c1,...` — monomial coefficients c0 + c1 x + ...
/// * `const:c` — the constant c
/// * a trial-family name: `r0`..`r12`, `absx15` (|x|^{3/2}), `expx`,
///   `bump14` ((1-x^2)^{1/4}), `randpoly` (seeded degree-10 polynomial)
pub fn parse_function(spec: &str) -> Result<FuncRep> {
    if let Some(rest) = spec.strip_prefix("poly:") {
        let coeffs: Result<Vec<f64>> = rest
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coefficient '{c}' in {spec}")))
            })
            .collect();
        let coeffs = coeffs?;
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("poly: needs coefficients".into()));
        }
        return Ok(FuncRep::from_monomials(&coeffs));
    }
    if let Some(rest) = spec.strip_prefix("const:") {
        let c: f64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad constant in {spec}")))?;
        return Ok(FuncRep::constant(c));
    }
    TrialFamily::member(spec).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown function '{spec}'; use poly:c0,c1,..., const:c, or one of {}",
            TrialFamily::names().join(", ")
        ))
    })
}

/// Interior kinks of the spec'd function (quadrature split points).
pub fn split_points(spec: &str) -> Vec<f64> {
    TrialFamily::split_points(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_poly_and_const() {
        let f = parse_function("poly:0,0,1").unwrap();
        assert!((f.eval(0.5) - 0.25).abs() < 1e-14);
        let c = parse_function("const:2.5").unwrap();
        assert!((c.eval(-0.3) - 2.5).abs() < 1e-14);
    }

    #[test]
    fn parses_named_members() {
        assert!(parse_function("absx15").is_ok());
        assert!(parse_function("expx").is_ok());
        assert!(parse_function("r3").is_ok());
        assert!(parse_function("nope").is_err());
    }
}
