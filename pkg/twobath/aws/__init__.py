from . import s3
