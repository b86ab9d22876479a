use std::time::Instant;

use strengthlab::action::*;
use strengthlab::bounds::Bounds;
use strengthlab::corpus::*;
use strengthlab::monoidal::*;

fn main() {
    let t0 = Instant::now();
    let (kl, mon) = klexc(2, Bounds::default()).unwrap();
    println!("built in {:?}, name = {}", t0.elapsed(), kl.name);

    let t = Instant::now();
    let rep = validate_monoidal(&mon).unwrap();
    println!("monoidal: {} in {:?}", rep.summary(), t.elapsed());

    let a = self_action(&mon);
    let t = Instant::now();
    let rep = validate_action(&a).unwrap();
    println!("action: {} in {:?}", rep.summary(), t.elapsed());

    for e in 0..2 {
        let phi = klexc_wfc(&a, e);
        let t = Instant::now();
        let rep = validate_wfc(&phi).unwrap();
        println!("phi-e{e}: {} in {:?}", rep.summary(), t.elapsed());
    }

    let t = Instant::now();
    let found = enumerate_wfc(&a, Bounds::from_env()).unwrap();
    println!("enumerated {} in {:?}", found.len(), t.elapsed());
}
