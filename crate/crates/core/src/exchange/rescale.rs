//! Rescaling of exchange patterns by scalars from the coefficient group, and
//! tropical propagation of such scalars along the exchange graph.
//!
//! A pattern here is an [`ExchangeGraph`] of [`Seed`]s. Positions are
//! identified across an edge by the neighbour's position map, which plays
//! the role of the discrete connection.

use super::graph::ExchangeGraph;
use super::rational::RationalFunction;
use super::seed::Seed;
use crate::semifields::TropicalElement;
use crate::{Error, Result};

/// One tropical scalar `c_e(t)` per vertex `t` and position `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarFamily {
    pub values: Vec<Vec<TropicalElement>>,
}

impl ScalarFamily {
    /// The family that is 1 everywhere.
    pub fn ones(g: &ExchangeGraph<Seed>) -> Self {
        let gens = g.vertices.first().map(|s| s.cluster()[0].nq()).unwrap_or(0);
        ScalarFamily {
            values: g
                .vertices
                .iter()
                .map(|s| vec![TropicalElement::one(gens); s.rank()])
                .collect(),
        }
    }

    /// Assigns each cluster variable a scalar, so that the family is
    /// compatible by construction.
    pub fn per_variable<F>(g: &ExchangeGraph<Seed>, f: F) -> Self
    where
        F: Fn(&RationalFunction) -> TropicalElement,
    {
        ScalarFamily {
            values: g.vertices.iter().map(|s| s.cluster().iter().map(&f).collect()).collect(),
        }
    }

    /// Checks that the scalar of every position not being mutated is carried
    /// unchanged along every edge.
    pub fn check_compatible(&self, g: &ExchangeGraph<Seed>) -> Result<()> {
        if self.values.len() != g.vertices.len() {
            return Err(Error::IncompatibleFamily(format!(
                "{} vertices in the family, {} in the pattern",
                self.values.len(),
                g.vertices.len()
            )));
        }
        for (v, row) in g.neighbors.iter().enumerate() {
            if self.values[v].len() != g.vertices[v].rank() {
                return Err(Error::IncompatibleFamily(format!("wrong number of scalars at vertex {v}")));
            }
            for (k, nb) in row.iter().enumerate() {
                let Some(nb) = nb else { continue };
                for y in (0..row.len()).filter(|&y| y != k) {
                    if self.values[v][y] != self.values[nb.vertex][nb.perm[y]] {
                        return Err(Error::IncompatibleFamily(format!(
                            "scalar at vertex {v}, position {y} changes across the edge in direction {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn monomial(c: &[TropicalElement], column: &[i64], sign: i64) -> Result<TropicalElement> {
    let mut acc = TropicalElement::one(c[0].gens());
    for (cf, &b) in c.iter().zip(column) {
        let e = (sign * b).max(0);
        if e != 0 {
            acc = acc.trop_mul(&cf.pow(e)?)?;
        }
    }
    Ok(acc)
}

fn column(s: &Seed, e: usize) -> Vec<i64> {
    (0..s.rank()).map(|f| s.matrix().get(f, e)).collect()
}

/// Divides every cluster variable by its scalar and transforms the
/// coefficients so that the result is again an exchange pattern:
/// `p'^±_e(t) = p^±_e(t) / (c_e(t) c_e(t̄)) · ∏_{±b_fe > 0} c_f(t)^{±b_fe}`.
pub fn rescale_pattern(g: &ExchangeGraph<Seed>, c: &ScalarFamily) -> Result<ExchangeGraph<Seed>> {
    c.check_compatible(g)?;
    let mut vertices = Vec::with_capacity(g.vertices.len());
    for (t, s) in g.vertices.iter().enumerate() {
        let ct = &c.values[t];
        let cluster = s
            .cluster()
            .iter()
            .zip(ct)
            .map(|(x, ce)| x.mul_tropical(&ce.inv()))
            .collect::<Result<Vec<_>>>()?;
        let mut coeffs = Vec::with_capacity(s.rank());
        for e in 0..s.rank() {
            let nb = g.neighbors[t][e].as_ref().ok_or_else(|| {
                Error::IncompatibleFamily(format!("vertex {t} has no neighbour in direction {e}; the pattern is truncated"))
            })?;
            let across = &c.values[nb.vertex][nb.perm[e]];
            let denom = ct[e].trop_mul(across)?;
            let col = column(s, e);
            let (plus, minus) = &s.coefficients()[e];
            coeffs.push((
                plus.trop_div(&denom)?.trop_mul(&monomial(ct, &col, 1)?)?,
                minus.trop_div(&denom)?.trop_mul(&monomial(ct, &col, -1)?)?,
            ));
        }
        vertices.push(s.with_data(cluster, coeffs)?);
    }
    Ok(ExchangeGraph {
        vertices,
        neighbors: g.neighbors.clone(),
        parents: g.parents.clone(),
        variables: Vec::new(),
        truncated: g.truncated,
    }
    .with_variables())
}

impl ExchangeGraph<Seed> {
    fn with_variables(mut self) -> Self {
        let mut vars: Vec<RationalFunction> = self.vertices.iter().flat_map(|s| s.cluster().iter().cloned()).collect();
        vars.sort();
        vars.dedup();
        self.variables = vars;
        self
    }
}

/// `(p⁺ ∏ c^{[b]+} ⊕ p⁻ ∏ c^{[−b]+}) / c_e`: the tropical exchange relation.
pub fn tropical_exchange(s: &Seed, c: &[TropicalElement], e: usize) -> Result<TropicalElement> {
    let col = column(s, e);
    let (plus, minus) = &s.coefficients()[e];
    let up = plus.trop_mul(&monomial(c, &col, 1)?)?;
    let down = minus.trop_mul(&monomial(c, &col, -1)?)?;
    up.trop_add(&down)?.trop_div(&c[e])
}

/// Spreads initial tropical values at vertex 0 over the whole graph by the
/// tropical exchange relation, and checks that every edge agrees.
pub fn tropical_propagate(g: &ExchangeGraph<Seed>, initial: &[TropicalElement]) -> Result<ScalarFamily> {
    let Some(first) = g.vertices.first() else {
        return Ok(ScalarFamily { values: Vec::new() });
    };
    if initial.len() != first.rank() {
        return Err(Error::Dimension(format!("{} initial values for rank {}", initial.len(), first.rank())));
    }
    let mut values: Vec<Option<Vec<TropicalElement>>> = vec![None; g.vertices.len()];
    values[0] = Some(initial.to_vec());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let cv = values[v].clone().expect("queued vertices are assigned");
        for (k, nb) in g.neighbors[v].iter().enumerate() {
            let Some(nb) = nb else { continue };
            let mut cw = vec![cv[0].clone(); cv.len()];
            for (y, value) in cv.iter().enumerate() {
                cw[nb.perm[y]] = if y == k {
                    tropical_exchange(&g.vertices[v], &cv, k)?
                } else {
                    value.clone()
                };
            }
            match &values[nb.vertex] {
                None => {
                    values[nb.vertex] = Some(cw);
                    queue.push_back(nb.vertex);
                }
                Some(existing) if *existing != cw => {
                    return Err(Error::Inconsistent(format!(
                        "tropical values at vertex {} disagree when reached from vertex {v}",
                        nb.vertex
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(ScalarFamily {
        values: values
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::Inconsistent("graph is not connected".into())))
            .collect::<Result<_>>()?,
    })
}

/// Every exchange-pattern axiom that failed, one message per failure.
pub fn verify_pattern(g: &ExchangeGraph<Seed>) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for (v, row) in g.neighbors.iter().enumerate() {
        let s = &g.vertices[v];
        for (k, nb) in row.iter().enumerate() {
            let Some(nb) = nb else { continue };
            let w = &g.vertices[nb.vertex];
            let kk = nb.perm[k];
            if &s.matrix().mutate(k)?.permuted(&nb.perm) != w.matrix() {
                failures.push(format!("matrix mutation fails on edge {v} -[{k}]- {}", nb.vertex));
            }
            if s.exchange(k)? != w.cluster()[kk] {
                failures.push(format!("exchange relation fails on edge {v} -[{k}]- {}", nb.vertex));
            }
            let (pp, pm) = &s.coefficients()[k];
            if w.coefficients()[kk] != (pm.clone(), pp.clone()) {
                failures.push(format!("coefficient swap fails on edge {v} -[{k}]- {}", nb.vertex));
            }
            let rk = s.ratio(k);
            for y in (0..s.rank()).filter(|&y| y != k) {
                let bky = s.matrix().get(k, y);
                let expected = s.ratio(y).trop_mul(&rk.pow(bky.max(0))?)?.trop_mul(&pm.pow(bky)?)?;
                if w.ratio(nb.perm[y]) != expected || s.cluster()[y] != w.cluster()[nb.perm[y]] {
                    failures.push(format!(
                        "position {y} is not carried correctly on edge {v} -[{k}]- {}",
                        nb.vertex
                    ));
                }
            }
        }
    }
    Ok(failures)
}

/// True when `p⁺ ⊕ p⁻ = 1` holds at every position of every vertex.
pub fn is_normalized(g: &ExchangeGraph<Seed>) -> bool {
    g.vertices.iter().all(Seed::is_normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::graph::enumerate_exchange_graph;
    use crate::exchange::matrix::{ExchangeMatrix, ExtendedMatrix};
    use crate::exchange::seed::GeometricSeed;

    fn a2_pattern() -> ExchangeGraph<Seed> {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let g = enumerate_exchange_graph(&GeometricSeed::initial(ExtendedMatrix::principal(&b)), 100).unwrap();
        g.map(|s| Ok(s.to_seed())).unwrap()
    }

    #[test]
    fn unit_rescaling_is_identity() {
        let g = a2_pattern();
        assert!(verify_pattern(&g).unwrap().is_empty());
        let r = rescale_pattern(&g, &ScalarFamily::ones(&g)).unwrap();
        assert_eq!(r.vertices, g.vertices);
    }

    #[test]
    fn rescaling_then_propagating_normalizes() {
        let g = a2_pattern();
        let gens = 2;
        let d = ScalarFamily::per_variable(&g, |f| {
            // An arbitrary but deterministic monomial per variable.
            let h = f.to_string().len() as i64;
            TropicalElement::from_halves(gens, [(0, h % 5 - 2), (1, 3 - h % 7)]).unwrap()
        });
        let skewed = rescale_pattern(&g, &d).unwrap();
        assert!(verify_pattern(&skewed).unwrap().is_empty());
        assert!(!is_normalized(&skewed));
        let start = vec![TropicalElement::generator(gens, 0).unwrap(), TropicalElement::one(gens)];
        let c = tropical_propagate(&skewed, &start).unwrap();
        let fixed = rescale_pattern(&skewed, &c).unwrap();
        assert!(verify_pattern(&fixed).unwrap().is_empty());
        assert!(is_normalized(&fixed));
    }

    #[test]
    fn incompatible_family_is_rejected() {
        let g = a2_pattern();
        let mut c = ScalarFamily::ones(&g);
        c.values[0][1] = TropicalElement::generator(2, 0).unwrap();
        assert!(matches!(rescale_pattern(&g, &c), Err(Error::IncompatibleFamily(_))));
    }
}
