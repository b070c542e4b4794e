use qcluster::ranktwo::{ClusterSequence, ExchangePolynomial};
use std::time::Instant;

fn main() {
    let mut seq = ClusterSequence::new(
        ExchangePolynomial::trivial(3),
        ExchangePolynomial::trivial(3),
    );
    for k in 3..=9 {
        let t = Instant::now();
        let v = seq.var(k).unwrap();
        let qw: usize = v.terms().map(|(_, f)| f.num_terms()).sum();
        eprintln!(
            "X_{k}: {} terms, {} total q-terms  ({:?})",
            v.num_terms(),
            qw,
            t.elapsed()
        );
    }
}
