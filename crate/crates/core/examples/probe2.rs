use bunchkit_core::duality::theta_check;
use bunchkit_core::generate::random_algebras;
use bunchkit_core::logic::{Logic, LogicName};
use rayon::prelude::*;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    for name in LogicName::ALL {
        let t = Instant::now();
        let algebras = random_algebras(&Logic::new(name), 200, 42);
        let bad: Vec<_> = algebras
            .par_iter()
            .filter_map(|a| {
                let rep = theta_check(a).expect("valid algebra");
                let emb = rep.embedding_ok();
                let surj = rep.surjective;
                if !emb || (name.is_boolean() && !surj) {
                    Some(format!(
                        "carrier {}: {:?}",
                        a.n(),
                        rep.lines.iter().filter(|l| !l.holds).map(|l| &l.name).collect::<Vec<_>>()
                    ))
                } else {
                    None
                }
            })
            .collect();
        println!("{name}: {} failures in {:?} {:?}", bad.len(), t.elapsed(), bad.first());
    }
    println!("total {:?}", t0.elapsed());
}
