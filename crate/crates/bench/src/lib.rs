//! Fixtures shared by the benchmarks.

use dyndeg_core::maps::IntMat3;

/// Forward matrix whose inverse has a real Perron eigenvalue.
pub fn a_base() -> IntMat3 {
    IntMat3::new([[-3, -14, -12], [4, 11, 6], [-2, -4, -1]]).unwrap()
}

/// Matrix with a dominant complex pair.
pub fn a_one() -> IntMat3 {
    IntMat3::new([[56, -19, -17], [-16, 6, 5], [207, -71, -63]]).unwrap()
}
