use reiflab::domains::{rasterize, DomainSpec};
use reiflab::flatness::*;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    // halfspace fixture
    let hs = rasterize(&DomainSpec::Halfspace { normal: [0.0, 1.0], offset: 0.0 }, 5e-4,
        [[-2.0, -2.0], [2.0, 2.0]]).unwrap();
    println!("[{:?}] hs rasterized {} samples", t0.elapsed(), hs.boundary.len());
    let out = certify_with(&hs, 1.0/600.0, 1.2, 1, 500).unwrap();
    match &out {
        CertifyOutcome::Certificate(c) => println!("[{:?}] hs CERT sup={} margin={} total={}", t0.elapsed(), c.sup_epsilon, c.discretization_margin, c.certified_epsilon),
        CertifyOutcome::Violation(v) => println!("[{:?}] hs VIOLATION {}", t0.elapsed(), v.reason),
    }

    // lipschitz fixture
    let t1 = Instant::now();
    let lg = rasterize(&DomainSpec::LipschitzGraph { lip: 0.001, seed: 7 }, 1e-4,
        [[-0.8, -0.8], [0.8, 0.8]]).unwrap();
    println!("[{:?}] lg rasterized {} samples", t1.elapsed(), lg.boundary.len());
    let out = certify_with(&lg, 1.0/600.0, 0.35, 1, 500).unwrap();
    match &out {
        CertifyOutcome::Certificate(c) => println!("[{:?}] lg CERT sup={} margin={} total={}", t1.elapsed(), c.sup_epsilon, c.discretization_margin, c.certified_epsilon),
        CertifyOutcome::Violation(v) => println!("[{:?}] lg VIOLATION {}", t1.elapsed(), v.reason),
    }
}
