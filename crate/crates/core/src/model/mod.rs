//! Model Hamiltonians, bases, and total-magnetization sectors.

mod basis;
mod blocks;
mod hamiltonian;
mod params;
mod space;

pub use basis::{
    device_basis, product_basis, product_to_device, BasisLabel, BasisRegistry, DeviceLabel,
    ProductLabel, Site, SpinLabel,
};
pub use blocks::{block_decompose, BlockDecomposition, SectorBlock};
pub use hamiltonian::{
    bonding_antibonding_coupling, build_effective_hamiltonian, build_effective_hamiltonian_product,
    build_full_hamiltonian, common_diagonal, project_antibonding, project_bonding,
    remove_common_diagonal, KondoNormalization, SpinTerms,
};
pub use params::ModelParams;
pub use space::Space;
