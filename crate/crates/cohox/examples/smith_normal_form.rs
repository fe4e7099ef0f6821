//! Smith normal form with tracked unimodular transforms.

use cohox::matrix::{smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
    let snf = smith_normal_form(&m);

    println!("invariant factors: {:?}", snf.diagonal());
    println!("rank: {}", snf.rank());

    // D = U M V exactly
    let d = snf.u.mul(&m).mul(&snf.v);
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            if r == c {
                assert_eq!(d.get(r, c), &snf.diagonal()[r]);
            } else {
                assert_eq!(d.get(r, c), &num_bigint::BigInt::from(0));
            }
        }
    }
    // U and V are invertible over Z
    assert_eq!(snf.u.mul(snf.u_inv()), IntMatrix::identity(3));
    assert_eq!(snf.v.mul(snf.v_inv()), IntMatrix::identity(3));
    println!("D = U M V verified, transforms unimodular");
}
