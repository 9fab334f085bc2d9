# Tropical geometry kernel
