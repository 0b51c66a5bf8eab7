use cubicform::canonical::*;
use cubicform::catalog::{self, CatalogKey};
use cubicform::sample::PointSampler;
use std::time::Instant;

fn main() {
    let m = catalog::builtin(&CatalogKey::plain("algebras5.6")).unwrap();
    let mut sampler = PointSampler::new(0xC0FFEE);
    for it in 0..3 {
        let b = sampler.invertible_matrix(m.dim());
        let scrambled = m.transform(&b).unwrap();
        let t = Instant::now(); let j = scrambled.algebra().is_jordan();
        eprintln!("iter {it} is_jordan({j}): {:?}", t.elapsed());
        let t = Instant::now(); let tf = scrambled.is_trace_form();
        eprintln!("iter {it} is_trace_form({tf}): {:?}", t.elapsed());
        let t = Instant::now(); let nil = scrambled.algebra().is_nilpotent();
        eprintln!("iter {it} is_nilpotent({nil}): {:?}", t.elapsed());
        let t = Instant::now(); let flag = complete_flag(scrambled.algebra()).unwrap();
        eprintln!("iter {it} flag: {:?}", t.elapsed());
        let t = Instant::now(); let (basis, _p) = can_form_basis(scrambled.gamma(), &flag).unwrap();
        eprintln!("iter {it} can_form: {:?}", t.elapsed());
        let t = Instant::now(); let _r = scrambled.transform(&basis).unwrap();
        eprintln!("iter {it} result transform: {:?}", t.elapsed());
    }
}
