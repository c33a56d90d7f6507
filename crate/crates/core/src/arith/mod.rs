//! Exact comparison of integer power products.
//!
//! Equality goes through a gcd-free basis and never touches logarithms.
//! Strict comparisons evaluate `Σ uᵢ ln αᵢ − Σ vᵢ ln βᵢ` in dyadic interval
//! arithmetic, doubling the precision until the enclosure excludes zero. The
//! Baker/Nesterenko bound caps that escalation; past the cap the products are
//! multiplied out.

mod baker;
mod gcd_free;
mod interval;
mod product;

pub use baker::{baker_bound, BakerBound};
pub use gcd_free::{gcd_free_basis, GcdFreeBasis};
pub use interval::{ln2, ln_integer, DyadicInterval};
pub use product::{
    product_compare, product_compare_with_stats, products_equal, CompareMethod, CompareStats,
    SignedProduct,
};
