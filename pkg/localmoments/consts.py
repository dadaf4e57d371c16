DEFAULT_TOL = 1e-10
DEFAULT_MASS_TOL = 1e-12
DEFAULT_SUPPORT_TOL = 1e-8
DEFAULT_RESIDUAL_TOL = 1e-8

# Condition names, as they appear in solvability reports and CLI output.
HANKEL_PSD = "Γ PSD"
KERNEL_SHIFT_0_2 = "ker Γ ⊂ ker Γ(2)"
SHIFTED_HANKEL_PSD = "Γ(1) PSD"
KERNEL_SHIFT_1_2 = "ker Γ(1) ⊂ ker Γ(2)"
WINDOW_PSD = "ΛΓ−Γ(1) PSD"
GAP_HANKEL_PD = "Γ PD"
GAP_WINDOW_PD = "Γ(2)−ΛΓ(1) PSD"
GAP_FIRST_INEQUALITY = "h_n(Λ,0)/(M(Λ)M(0)) > 0"
GAP_TRINOMIAL_ROOTS = "W roots real and distinct"
GAP_ZERO_GUARD = "p_{n-1} zeros in (0,Λ) < 2"
RATIO_BOUND = "ratio(Λ) ≤ 1"
LOCAL_COMPLEMENT_MASS = "c_0 > 0"
LOCAL_RESIDUALS = "window and global moments matched"
SOLUTION_RESIDUALS = "moments reproduced"
SOLUTION_SUPPORT = "atoms inside the support"
