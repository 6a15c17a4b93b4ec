use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use swcalc_core::free_systems::{build_free, FreeSystemSpec};
use swcalc_core::parse_field;

const ATOMS: [&str; 9] = ["b[1]", "c[1]", "beta[1]", "gamma[1]", "b[2]", "c[2]", "beta[2]", "gamma[2]", "one"];

fn atom(rng: &mut ChaCha8Rng) -> String {
    ATOMS[rng.gen_range(0..ATOMS.len())].to_string()
}

fn expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..6) {
        0 => atom(rng),
        1 => format!("d({})", expr(rng, depth - 1)),
        2 => format!("d^{}({})", rng.gen_range(0..3), expr(rng, depth - 1)),
        3 => {
            let m = rng.gen_range(1..4);
            let parts: Vec<String> = (0..m).map(|_| expr(rng, depth - 1)).collect();
            format!("no({})", parts.join(", "))
        }
        4 => format!("{} + {}", expr(rng, depth - 1), expr(rng, depth - 1)),
        _ => {
            let (p, q) = (rng.gen_range(-5..6), rng.gen_range(1..5));
            format!("({p}/{q})*({})", expr(rng, depth - 1))
        }
    }
}

#[test]
fn two_hundred_round_trips() {
    let alg = build_free(&FreeSystemSpec::bcbg(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut nonzero = 0;
    for i in 0..200 {
        let src = expr(&mut rng, 3);
        let x = parse_field(&alg, &src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = x.to_string();
        let y = parse_field(&alg, &printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(x, y, "{src}");
        assert_eq!(y.to_string(), printed);
        nonzero += usize::from(!x.is_zero());
        if i % 20 == 0 {
            let o = Command::new(env!("CARGO_BIN_EXE_swcalc")).args(["parse", "--algebra", "bcbg:2", &src]).output().unwrap();
            assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), printed);
        }
    }
    assert!(nonzero > 150);
}
