//! Cu-morphisms, approximating families, inductive limits of finite chains,
//! and transfer of properties along approximations.

mod approximation;
mod limit;
mod morphism;
mod transfer;

pub use approximation::{
    check_approximates, check_query, query_corpus, ApproxFamily, ApproxQuery, ApproxReport, QueryBounds, QueryWitness,
};
pub use limit::{build_limit, ChainSystem, LimitReport, LimitRepr};
pub use morphism::{
    chain_scaling, doubling_on_nbar, is_order_embedding, validate_morphism, CuMorphismRepr, MapRule, MorphismFlags,
};
pub use transfer::{transfer_check, TransferProperty, TransferReport};
