use num_bigint::BigInt;
use proptest::prelude::*;
use torhilbert_core::PrimeField;

const PRIMES: [u32; 6] = [2, 3, 7, 101, 32003, 2_147_483_647];

fn big_mod(v: BigInt, p: u32) -> u32 {
    let p = BigInt::from(p);
    let r = ((v % &p) + &p) % &p;
    u32::try_from(r).unwrap()
}

proptest! {
    #[test]
    fn arithmetic_matches_bigint(pi in 0..PRIMES.len(), a in any::<i64>(), b in any::<i64>()) {
        let p = PRIMES[pi];
        let f = PrimeField::new(p).unwrap();
        let (x, y) = (f.element(a), f.element(b));
        let (ba, bb) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(x.value(), big_mod(ba.clone(), p));
        prop_assert_eq!(x.add(y).value(), big_mod(&ba + &bb, p));
        prop_assert_eq!(x.sub(y).value(), big_mod(&ba - &bb, p));
        prop_assert_eq!(x.mul(y).value(), big_mod(&ba * &bb, p));
        prop_assert_eq!(x.neg().value(), big_mod(-&ba, p));
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert_eq!(big_mod(BigInt::from(inv.value()) * BigInt::from(x.value()), p), 1);
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn field_axioms(pi in 0..PRIMES.len(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let (x, y, z) = (f.element(a), f.element(b), f.element(c));
        prop_assert_eq!(x.add(y), y.add(x));
        prop_assert_eq!(x.mul(y), y.mul(x));
        prop_assert_eq!(x.add(y).add(z), x.add(y.add(z)));
        prop_assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
        prop_assert_eq!(x.mul(y.add(z)), x.mul(y).add(x.mul(z)));
        prop_assert_eq!(x.add(f.zero()), x);
        prop_assert_eq!(x.mul(f.one()), x);
        prop_assert!(x.add(x.neg()).is_zero());
    }
}

#[test]
fn fermat_on_default_field() {
    let p = 32003u32;
    let f = PrimeField::new(p).unwrap();
    for a in [1i64, 2, 12345, 32002] {
        let mut acc = f.one();
        let x = f.element(a);
        for _ in 0..p - 1 {
            acc = acc.mul(x);
        }
        assert_eq!(acc, f.one());
    }
}

#[test]
fn rejects_bad_characteristics() {
    assert!(PrimeField::new(1).is_err());
    assert!(PrimeField::new(32004).is_err());
    assert!(PrimeField::new(1 << 31).is_err());
}
