from neglab.cli import main

main()
