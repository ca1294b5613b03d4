//! Exact polynomials and rational functions in `q`, plus partition and
//! composition utilities.

mod partition;
mod poly;
mod ratfunc;

pub(crate) use partition::{join as partition_join, parse_list as parse_usize_list};
pub use partition::{compositions, compositions_with_sort, partitions, Composition, Partition};
pub use poly::{q_factorial, q_int, FieldScalar, Poly, Scalar};
pub use ratfunc::RatFunc;
