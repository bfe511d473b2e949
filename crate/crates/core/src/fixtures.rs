//! Small named quandles used throughout the tests and examples.

use crate::enumerate::{enumerate, EnumerationTask};
use crate::group::AbelianGroupSpec;
use crate::quandle::Quandle;

/// Connected quandle of size 3: affine over `Z_3` with doubling.
pub fn r3() -> Quandle {
    let spec = AbelianGroupSpec::new(vec![3]).unwrap();
    Quandle::affine(&spec, &[0, 2, 1]).unwrap()
}

/// Projection quandle of size 3.
pub fn p3() -> Quandle {
    Quandle::projection(3).unwrap()
}

/// Disconnected affine quandle over `Z_4` with tripling.
pub fn a4q() -> Quandle {
    let spec = AbelianGroupSpec::new(vec![4]).unwrap();
    Quandle::affine(&spec, &[0, 3, 2, 1]).unwrap()
}

/// The strictly simple quandle of size 4: affine over `Z_2²` twisted by an
/// order-3 matrix.
pub fn ss4() -> Quandle {
    let spec = AbelianGroupSpec::new(vec![2, 2]).unwrap();
    Quandle::affine_matrix(&spec, &[vec![0, 1], vec![1, 1]]).unwrap()
}

/// Affine over `Z_9` with doubling.
pub fn a9() -> Quandle {
    let spec = AbelianGroupSpec::new(vec![9]).unwrap();
    let images: Vec<u16> = (0..9).map(|a| ((2 * a) % 9) as u16).collect();
    Quandle::affine(&spec, &images).unwrap()
}

/// Affine over `Z_15` with doubling.
pub fn a15() -> Quandle {
    let spec = AbelianGroupSpec::new(vec![15]).unwrap();
    let images: Vec<u16> = (0..15).map(|a| ((2 * a) % 15) as u16).collect();
    Quandle::affine(&spec, &images).unwrap()
}

/// The connected cyclic quandle of size 6 (two fixed points per row),
/// obtained from the enumerator.
pub fn c6() -> Quandle {
    let task = EnumerationTask::connected(6);
    let found = enumerate(&task).expect("size-6 enumeration fits any budget");
    found
        .into_iter()
        .find(|q| {
            let p = q.cyclic_profile();
            p.is_cyclic && p.fixed_points == Some(2)
        })
        .expect("the connected cyclic quandle of size 6 exists")
}

/// Direct square of [`r3`].
pub fn r3_squared() -> Quandle {
    Quandle::product(&[r3(), r3()]).unwrap()
}

/// Direct square of [`ss4`].
pub fn ss4_squared() -> Quandle {
    Quandle::product(&[ss4(), ss4()]).unwrap()
}
