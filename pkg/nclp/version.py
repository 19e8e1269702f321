strversion = '0.4'
