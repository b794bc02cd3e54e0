"""Mathematical modules: exact numbers, polynomial families and the schemes themselves."""
