from polignac_core.cli import main

main()
