from .evaluate import eval_command, scan_command
from .physics import resonances_command, stark_command, xsection_command
from .verify import crosscheck_command, verify_command

COMMANDS = [
    eval_command,
    scan_command,
    verify_command,
    resonances_command,
    xsection_command,
    stark_command,
    crosscheck_command,
]
