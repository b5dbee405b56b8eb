from qbell.cli import main

main()
