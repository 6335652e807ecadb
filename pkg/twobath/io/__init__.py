from .folder import OutputFolder
