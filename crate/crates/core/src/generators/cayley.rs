use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Cayley graph of `A ⊆ Z_p \ {0}`: `x ~ y` whenever `x - y` or `y - x`
/// lies in `A`.
pub fn cayley_graph(p: usize, generators: &[usize]) -> Result<Graph> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p={p} is not prime")));
    }
    if generators.is_empty() {
        return Err(Error::InvalidParameter("generator set A is empty".into()));
    }
    if let Some(&a) = generators.iter().find(|&&a| a == 0 || a >= p) {
        return Err(Error::InvalidParameter(format!(
            "generator {a} must lie in 1..{}",
            p - 1
        )));
    }
    let edges: Vec<_> = (0..p)
        .flat_map(|x| generators.iter().map(move |&a| (x, (x + a) % p)))
        .collect();
    Graph::new(p, &edges, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::power_ratio;
    use crate::rational::Rational;

    #[test]
    fn primality() {
        let primes: Vec<_> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn cycle_and_dense_examples() {
        let g = cayley_graph(11, &[1]).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.diameter(), Some(5));
        assert_eq!(power_ratio(&g, 3).unwrap(), Rational::integer(3));

        let g = cayley_graph(7, &[1, 2]).unwrap();
        assert_eq!(g.regular_degree(), Some(4));
        assert_eq!(g.diameter(), Some(2));
    }

    #[test]
    fn symmetric_generators_do_not_double_count() {
        // 1 and 10 = -1 generate the same cycle
        let g = cayley_graph(11, &[1, 10]).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn rotation_is_an_automorphism() {
        let p = 13;
        let g = cayley_graph(p, &[2, 5]).unwrap();
        for (u, v) in g.edges() {
            assert!(g.has_edge((u + 1) % p, (v + 1) % p));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cayley_graph(15, &[1]).is_err());
        assert!(cayley_graph(11, &[0, 1]).is_err());
        assert!(cayley_graph(11, &[]).is_err());
        assert!(cayley_graph(11, &[11]).is_err());
    }
}
