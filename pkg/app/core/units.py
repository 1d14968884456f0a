# Physical constants used to put atomic-unit results into lab units.

Hartree_eV = 27.211386018          # Hartree in eV
Alpha = 7.2973525693E-3            # Fine structure constant
BohrRadius_cm = 5.29177210903E-9   # Bohr radius in cm
BohrArea_cm2 = BohrRadius_cm ** 2  # atomic area unit in cm2
re_cm = 2.8179403262E-13           # classical electron radius in cm
sig_t_cm2 = 6.6524587321E-25       # Thomson cross section in cm2
I0_W_cm2 = 7.016E16                # characteristic atomic intensity in W/cm2
