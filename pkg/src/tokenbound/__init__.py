"""Token graphs, spectral bounds and 2-local Hamiltonian energies."""
